#include "hadamard/certify.hpp"

#include <cmath>
#include <random>

#include "hadamard/errors.hpp"

namespace hadamard {

namespace {

constexpr int kLambdaSteps = 16;

// 53 random mantissa bits; identical on every platform for a given seed.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit_uniform(rng); }

std::optional<Witness> check_negative(const UnivariateFn& g, double x, double tol) {
    const double gx = g(x);
    if (gx < -tol) {
        Witness w;
        w.kind = WitnessKind::NegativeValue;
        w.x1 = w.x2 = x;
        w.lambda = 1.0;
        w.lhs = gx;
        w.rhs = 0.0;
        w.slack = -gx;
        return w;
    }
    return std::nullopt;
}

std::optional<Witness> check_pair(const UnivariateFn& g, double s, double x1, double x2, double tol) {
    if (auto w = check_negative(g, x1, tol)) return w;
    if (auto w = check_negative(g, x2, tol)) return w;
    const double g1 = g(x1), g2 = g(x2);
    for (int k = 1; k < kLambdaSteps; ++k) {
        const double lambda = static_cast<double>(k) / kLambdaSteps;
        const double lhs = g(lambda * x1 + (1.0 - lambda) * x2);
        const double rhs = std::pow(lambda, s) * g1 + std::pow(1.0 - lambda, s) * g2;
        if (lhs - rhs > tol) {
            Witness w;
            w.kind = WitnessKind::InequalityViolation;
            w.x1 = x1;
            w.x2 = x2;
            w.lambda = lambda;
            w.lhs = lhs;
            w.rhs = rhs;
            w.slack = lhs - rhs;
            return w;
        }
    }
    return std::nullopt;
}

UnivariateFn section(const BivariateFn& g, SectionAxis axis, double fixed) {
    if (axis == SectionAxis::Horizontal) return [&g, fixed](double u) { return g(u, fixed); };
    return [&g, fixed](double v) { return g(fixed, v); };
}

}  // namespace

CertificationReport certify_s_convex_second_sense(const UnivariateFn& g, SExponent s, double lo, double hi,
                                                  const SamplerConfig& cfg) {
    if (!(lo >= 0.0) || !(lo < hi)) {
        throw DomainError("s-convexity certification needs an interval 0 <= lo < hi");
    }
    std::mt19937_64 rng(cfg.seed);
    CertificationReport report;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        const double x1 = uniform(rng, lo, hi);
        const double x2 = uniform(rng, lo, hi);
        report.samples_used = i + 1;
        if (auto w = check_pair(g, s.value(), x1, x2, cfg.tolerance)) {
            report.verdict = CertificationVerdict::Counterexample;
            report.witness = w;
            return report;
        }
    }
    return report;
}

CertificationReport certify_coordinated(const BivariateFn& g, const Rect& rect, SExponent s,
                                        const SamplerConfig& cfg) {
    if (!rect.in_nonnegative_quadrant()) {
        throw DomainError("co-ordinated s-convexity is defined on rectangles inside [0, inf)^2");
    }
    std::mt19937_64 rng(cfg.seed);
    CertificationReport report;
    for (std::size_t i = 0; i < cfg.samples; ++i) {
        report.samples_used = i + 1;

        const double v0 = uniform(rng, rect.c(), rect.d());
        const double u1 = uniform(rng, rect.a(), rect.b());
        const double u2 = uniform(rng, rect.a(), rect.b());
        if (auto w = check_pair(section(g, SectionAxis::Horizontal, v0), s.value(), u1, u2, cfg.tolerance)) {
            w->axis = SectionAxis::Horizontal;
            w->fixed = v0;
            report.verdict = CertificationVerdict::Counterexample;
            report.witness = w;
            return report;
        }

        const double u0 = uniform(rng, rect.a(), rect.b());
        const double v1 = uniform(rng, rect.c(), rect.d());
        const double v2 = uniform(rng, rect.c(), rect.d());
        if (auto w = check_pair(section(g, SectionAxis::Vertical, u0), s.value(), v1, v2, cfg.tolerance)) {
            w->axis = SectionAxis::Vertical;
            w->fixed = u0;
            report.verdict = CertificationVerdict::Counterexample;
            report.witness = w;
            return report;
        }
    }
    return report;
}

CertificationReport certify_coordinated(const Surface& g, const Rect& rect, SExponent s, const SamplerConfig& cfg) {
    return certify_coordinated(g.as_function(), rect, s, cfg);
}

bool replay_witness(const UnivariateFn& g, SExponent s, const Witness& w, double tol) {
    if (w.kind == WitnessKind::NegativeValue) return g(w.x1) < -tol;
    const double lhs = g(w.lambda * w.x1 + (1.0 - w.lambda) * w.x2);
    const double rhs = std::pow(w.lambda, s.value()) * g(w.x1) + std::pow(1.0 - w.lambda, s.value()) * g(w.x2);
    return lhs - rhs > tol;
}

bool replay_witness(const BivariateFn& g, SExponent s, const Witness& w, double tol) {
    if (w.axis == SectionAxis::None) {
        throw std::invalid_argument("witness carries no section; replay it against a univariate function");
    }
    return replay_witness(section(g, w.axis, w.fixed), s, w, tol);
}

BivariateFn abs_mixed_power(const Surface& f, double q) {
    return [f, q](double u, double v) { return std::pow(std::abs(f.mixed_partial(u, v)), q); };
}

}  // namespace hadamard
