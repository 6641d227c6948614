#include "hadamard/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hadamard/errors.hpp"

namespace hadamard {

void QuadConfig::validate() const {
    if (gl_order < 2) throw std::invalid_argument("gl_order must be at least 2");
    if (max_subdiv < 0) throw std::invalid_argument("max_subdiv must be nonnegative");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
}

namespace {

GaussRule compute_rule(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16) break;
        }
        // Recompute the derivative at the converged node.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // x is the i-th largest node.
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
        rule.weights[static_cast<std::size_t>(i)] = w;
    }
    if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return rule;
}

std::shared_mutex g_rule_mutex;
std::map<int, std::unique_ptr<const GaussRule>> g_rules;

void require_finite(double value) {
    if (!std::isfinite(value)) throw EvalError("integrand produced a non-finite value");
}

// Relative rounding floor: below this the GL(n) vs GL(n/2) difference is noise.
constexpr double kRoundoffFactor = 50.0 * std::numeric_limits<double>::epsilon();

struct Cell1 {
    double lo, hi, value, abs_value, err;
};

Cell1 evaluate_cell(const UnivariateFn& g, double lo, double hi, const GaussRule& fine, const GaussRule& coarse) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double fine_sum = 0.0, abs_sum = 0.0, coarse_sum = 0.0;
    for (std::size_t i = 0; i < fine.nodes.size(); ++i) {
        const double gv = g(mid + half * fine.nodes[i]);
        require_finite(gv);
        fine_sum += fine.weights[i] * gv;
        abs_sum += fine.weights[i] * std::abs(gv);
    }
    for (std::size_t i = 0; i < coarse.nodes.size(); ++i) {
        const double gv = g(mid + half * coarse.nodes[i]);
        require_finite(gv);
        coarse_sum += coarse.weights[i] * gv;
    }
    return {lo, hi, half * fine_sum, half * abs_sum, std::abs(half * (fine_sum - coarse_sum))};
}

struct Cell2 {
    double ulo, uhi, vlo, vhi, value, abs_value, err;
};

template <bool Parallel>
void tensor_sums(const BivariateFn& f, double ulo, double uhi, double vlo, double vhi, const GaussRule& rule,
                 double& value, double* abs_value) {
    const double um = 0.5 * (ulo + uhi), uh = 0.5 * (uhi - ulo);
    const double vm = 0.5 * (vlo + vhi), vh = 0.5 * (vhi - vlo);
    const int n = static_cast<int>(rule.nodes.size());
    std::vector<double> rows(static_cast<std::size_t>(n), 0.0), abs_rows(static_cast<std::size_t>(n), 0.0);
    std::exception_ptr failure;
    auto row = [&](int i) {
        const double u = um + uh * rule.nodes[static_cast<std::size_t>(i)];
        double acc = 0.0, abs_acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double fv = f(u, vm + vh * rule.nodes[static_cast<std::size_t>(j)]);
            require_finite(fv);
            acc += rule.weights[static_cast<std::size_t>(j)] * fv;
            abs_acc += rule.weights[static_cast<std::size_t>(j)] * std::abs(fv);
        }
        rows[static_cast<std::size_t>(i)] = acc;
        abs_rows[static_cast<std::size_t>(i)] = abs_acc;
    };
    if constexpr (Parallel) {
#ifdef _OPENMP
        const bool go_parallel = !omp_in_parallel() && n >= 16;
#pragma omp parallel for schedule(static) if (go_parallel)
        for (int i = 0; i < n; ++i) {
            try {
                row(i);
            } catch (...) {
#pragma omp critical(hadamard_tensor_failure)
                if (!failure) failure = std::current_exception();
            }
        }
#else
        for (int i = 0; i < n; ++i) row(i);
#endif
    } else {
        for (int i = 0; i < n; ++i) row(i);
    }
    if (failure) std::rethrow_exception(failure);
    double total = 0.0, abs_total = 0.0;
    for (int i = 0; i < n; ++i) {
        total += rule.weights[static_cast<std::size_t>(i)] * rows[static_cast<std::size_t>(i)];
        abs_total += rule.weights[static_cast<std::size_t>(i)] * abs_rows[static_cast<std::size_t>(i)];
    }
    value = uh * vh * total;
    if (abs_value) *abs_value = uh * vh * abs_total;
}

Cell2 evaluate_cell(const BivariateFn& f, double ulo, double uhi, double vlo, double vhi, const GaussRule& fine,
                    const GaussRule& coarse) {
    double fine_value = 0.0, abs_value = 0.0, coarse_value = 0.0;
    tensor_sums<true>(f, ulo, uhi, vlo, vhi, fine, fine_value, &abs_value);
    tensor_sums<true>(f, ulo, uhi, vlo, vhi, coarse, coarse_value, nullptr);
    return {ulo, uhi, vlo, vhi, fine_value, abs_value, std::abs(fine_value - coarse_value)};
}

template <typename Cell>
struct WorseFirst {
    bool operator()(const Cell& x, const Cell& y) const { return x.err < y.err; }
};

// Hard cap on the number of splits, independent of the depth limit.
constexpr int kMaxSplits = 200000;

template <typename Cell>
void exact_totals(std::vector<Cell> cells, double& value, double& abs_value, double& err) {
    // Sum in a fixed geometric order independent of heap layout.
    std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) {
        if constexpr (requires { x.ulo; }) {
            return std::tie(x.ulo, x.vlo) < std::tie(y.ulo, y.vlo);
        } else {
            return x.lo < y.lo;
        }
    });
    value = abs_value = err = 0.0;
    for (const Cell& c : cells) {
        value += c.value;
        abs_value += c.abs_value;
        err += c.err;
    }
}

// Global-priority refinement. max_subdiv bounds the bisection depth of any
// cell; cells at the limit are frozen and no longer split.
template <typename Cell, typename Split>
IntegralResult refine(Cell first, const QuadConfig& cfg, Split split) {
    struct Tagged {
        Cell cell;
        int depth;
        double err;
    };
    std::priority_queue<Tagged, std::vector<Tagged>, WorseFirst<Tagged>> heap;
    std::vector<Cell> frozen;
    auto collect = [&] {
        std::vector<Cell> cells = frozen;
        auto copy = heap;
        while (!copy.empty()) {
            cells.push_back(copy.top().cell);
            copy.pop();
        }
        return cells;
    };
    auto place = [&](const Cell& c, int depth) {
        if (depth >= cfg.max_subdiv)
            frozen.push_back(c);
        else
            heap.push({c, depth, c.err});
    };
    place(first, 0);
    int splits = 0, depth_reached = 0;
    double value = first.value, abs_value = first.abs_value, err = first.err;
    while (true) {
        if (err <= std::max(cfg.abs_tol, kRoundoffFactor * abs_value)) {
            exact_totals(collect(), value, abs_value, err);
            if (err <= std::max(cfg.abs_tol, kRoundoffFactor * abs_value)) break;
        }
        if (heap.empty() || splits >= kMaxSplits) {
            exact_totals(collect(), value, abs_value, err);
            throw ToleranceNotMet(value, err);
        }
        const Tagged worst = heap.top();
        heap.pop();
        value -= worst.cell.value;
        abs_value -= worst.cell.abs_value;
        err -= worst.cell.err;
        for (const Cell& c : split(worst.cell)) {
            place(c, worst.depth + 1);
            value += c.value;
            abs_value += c.abs_value;
            err += c.err;
        }
        ++splits;
        depth_reached = std::max(depth_reached, worst.depth + 1);
    }
    return {value, err, depth_reached, false};
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
    if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
    {
        std::shared_lock lock(g_rule_mutex);
        auto it = g_rules.find(order);
        if (it != g_rules.end()) return *it->second;
    }
    auto rule = std::make_unique<const GaussRule>(compute_rule(order));
    std::unique_lock lock(g_rule_mutex);
    auto [it, inserted] = g_rules.try_emplace(order, std::move(rule));
    return *it->second;
}

IntegralResult integrate_1d(const UnivariateFn& g, double lo, double hi, const QuadConfig& cfg) {
    cfg.validate();
    if (!(lo < hi)) throw DomainError("integrate_1d needs lo < hi");
    const GaussRule& fine = gauss_legendre(cfg.gl_order);
    const GaussRule& coarse = gauss_legendre(cfg.gl_order / 2);
    auto split = [&](const Cell1& c) {
        const double mid = 0.5 * (c.lo + c.hi);
        return std::array<Cell1, 2>{evaluate_cell(g, c.lo, mid, fine, coarse), evaluate_cell(g, mid, c.hi, fine, coarse)};
    };
    return refine(evaluate_cell(g, lo, hi, fine, coarse), cfg, split);
}

IntegralResult integrate_2d(const BivariateFn& f, const Rect& rect, const QuadConfig& cfg) {
    cfg.validate();
    const GaussRule& fine = gauss_legendre(cfg.gl_order);
    const GaussRule& coarse = gauss_legendre(cfg.gl_order / 2);
    auto split = [&](const Cell2& c) {
        const double um = 0.5 * (c.ulo + c.uhi), vm = 0.5 * (c.vlo + c.vhi);
        return std::array<Cell2, 4>{
            evaluate_cell(f, c.ulo, um, c.vlo, vm, fine, coarse), evaluate_cell(f, c.ulo, um, vm, c.vhi, fine, coarse),
            evaluate_cell(f, um, c.uhi, c.vlo, vm, fine, coarse), evaluate_cell(f, um, c.uhi, vm, c.vhi, fine, coarse)};
    };
    return refine(evaluate_cell(f, rect.a(), rect.b(), rect.c(), rect.d(), fine, coarse), cfg, split);
}

IntegralResult integrate_2d(const Surface& f, const Rect& rect, const QuadConfig& cfg) {
    return integrate_2d(f.as_function(), rect, cfg);
}

double tensor_gl_2d(const BivariateFn& f, double ulo, double uhi, double vlo, double vhi, const GaussRule& rule) {
    double value = 0.0;
    tensor_sums<true>(f, ulo, uhi, vlo, vhi, rule, value, nullptr);
    return value;
}

double tensor_gl_2d_serial(const BivariateFn& f, double ulo, double uhi, double vlo, double vhi,
                           const GaussRule& rule) {
    double value = 0.0;
    tensor_sums<false>(f, ulo, uhi, vlo, vhi, rule, value, nullptr);
    return value;
}

Rational poly_integral_exact(const Poly2<Rational>& p, const RationalRect& rect) {
    return p.integrate_box(rect.a(), rect.b(), rect.c(), rect.d());
}

IntegralResult poly_integral_result(const Poly2<Rational>& p, const RationalRect& rect) {
    return {to_double(poly_integral_exact(p, rect)), 0.0, 0, true};
}

double kernel_moment(SExponent s) { return 1.0 / ((s.value() + 1.0) * (s.value() + 2.0)); }

double holder_kernel_constant(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw BadExponent("holder_kernel_constant needs p >= 1");
    return 1.0 / std::pow(p + 1.0, 2.0 / p);
}

std::string_view to_string(T3ConstantMode mode) noexcept {
    return mode == T3ConstantMode::Verbatim ? "verbatim" : "sharpened";
}

T3ConstantMode parse_t3_constant_mode(std::string_view text) {
    if (text == "verbatim") return T3ConstantMode::Verbatim;
    if (text == "sharpened") return T3ConstantMode::Sharpened;
    throw std::invalid_argument("unknown T3 constant mode '" + std::string(text) + "' (expected verbatim|sharpened)");
}

double power_mean_prefactor(PowerMeanQ q, T3ConstantMode mode) {
    const double e = 2.0 - 2.0 / q.value();
    return std::exp2(mode == T3ConstantMode::Verbatim ? e : -e);
}

}  // namespace hadamard
