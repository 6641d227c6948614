#include "hadamard/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hadamard/errors.hpp"

namespace hadamard {

namespace {

struct IdName {
    TheoremId id;
    std::string_view name;
};

constexpr std::array<IdName, 22> kIdNames{{
    {TheoremId::T1, "t1"},         {TheoremId::T2, "t2"},         {TheoremId::T3, "t3"},
    {TheoremId::C1_1, "c1_1"},     {TheoremId::C1_2, "c1_2"},     {TheoremId::C1_3, "c1_3"},
    {TheoremId::C1_4, "c1_4"},     {TheoremId::C1_mid, "c1_mid"}, {TheoremId::C2_1, "c2_1"},
    {TheoremId::C2_2, "c2_2"},     {TheoremId::C2_3, "c2_3"},     {TheoremId::C2_4, "c2_4"},
    {TheoremId::C2_5, "c2_5"},     {TheoremId::C3_1, "c3_1"},     {TheoremId::C3_2, "c3_2"},
    {TheoremId::C3_3, "c3_3"},     {TheoremId::C3_4, "c3_4"},     {TheoremId::C3_5, "c3_5"},
    {TheoremId::R_c15, "r_c15"},   {TheoremId::R_metu, "r_metu"}, {TheoremId::R_final, "r_final"},
    {TheoremId::Chain, "chain"},
}};

// Part index (0..3) of each corner within a corollary.
std::size_t corner_part(Corner corner) {
    switch (corner) {
        case Corner::AC: return 0;
        case Corner::BD: return 1;
        case Corner::AD: return 2;
        case Corner::BC: return 3;
    }
    return 0;
}

// The corner sharing the u side with k (same a|b, other c|d) and the one
// sharing the v side.
Corner flip_v(Corner k) {
    switch (k) {
        case Corner::AC: return Corner::AD;
        case Corner::AD: return Corner::AC;
        case Corner::BC: return Corner::BD;
        case Corner::BD: return Corner::BC;
    }
    return k;
}

Corner flip_u(Corner k) {
    switch (k) {
        case Corner::AC: return Corner::BC;
        case Corner::AD: return Corner::BD;
        case Corner::BC: return Corner::AC;
        case Corner::BD: return Corner::AD;
    }
    return k;
}

bool a_side(Corner k) { return k == Corner::AC || k == Corner::AD; }
bool c_side(Corner k) { return k == Corner::AC || k == Corner::BC; }

// |D| at the nine points the theorem displays use.
struct DValues {
    double xy;
    std::array<double, 4> corner;  // kCorners order
    double x_c, x_d, a_y, b_y;

    double at_corner(Corner k) const { return corner[static_cast<std::size_t>(k)]; }
    double edge_v(Corner k) const { return c_side(k) ? x_c : x_d; }  // D(x, c|d)
    double edge_u(Corner k) const { return a_side(k) ? a_y : b_y; }  // D(a|b, y)
};

DValues d_values(const Surface& f, const Rect& r, const EvalPoint& pt) {
    require_inside(r, pt);
    DValues dv{};
    dv.xy = mixed_abs(f, pt);
    for (Corner k : kCorners) dv.corner[static_cast<std::size_t>(k)] = mixed_abs(f, corner_point(r, k));
    dv.x_c = mixed_abs(f, {pt.x, r.c()});
    dv.x_d = mixed_abs(f, {pt.x, r.d()});
    dv.a_y = mixed_abs(f, {r.a(), pt.y});
    dv.b_y = mixed_abs(f, {r.b(), pt.y});
    return dv;
}

// Squared quadrant weights (x-a|b)^2 (y-c|d)^2.
double quadrant_weight(const Rect& r, const EvalPoint& pt, Corner k) {
    const double wx = a_side(k) ? pt.x - r.a() : r.b() - pt.x;
    const double wy = c_side(k) ? pt.y - r.c() : r.d() - pt.y;
    return wx * wx * wy * wy;
}

double require_q(std::optional<double> q, std::string_view what) {
    if (!q) throw BadExponent(std::string(what) + " needs q");
    return *q;
}

// Ratio between the sharpened and the printed T3 constant, 2^(4/q - 4).
double t3_mode_factor(double q, T3ConstantMode mode) {
    return mode == T3ConstantMode::Verbatim ? 1.0 : std::exp2(4.0 / q - 4.0);
}

double holder_factor(SExponent s, HolderPair hp) {
    return holder_kernel_constant(hp.p()) / std::pow(s.value() + 1.0, 2.0 / hp.q());
}

// {|D(own)|^q + (s+1)|D(..)|^q + (s+1)|D(..)|^q + (s+1)^2 |D(..)|^q}^(1/q)
double power_mean_brace(double own, double side1, double side2, double far, double s1, double q) {
    return std::pow(std::pow(own, q) + s1 * std::pow(side1, q) + s1 * std::pow(side2, q) + s1 * s1 * std::pow(far, q),
                    1.0 / q);
}

double holder_brace(double d1, double d2, double d3, double d4, double q) {
    return std::pow(std::pow(d1, q) + std::pow(d2, q) + std::pow(d3, q) + std::pow(d4, q), 1.0 / q);
}

// The c3 corner brace at pt = k: {k + (s+1) flip_v(k) + (s+1) flip_u(k) + (s+1)^2 opposite(k)}.
double c3_corner_brace(const DValues& dv, Corner k, double s1, double q) {
    return power_mean_brace(dv.at_corner(k), dv.at_corner(flip_v(k)), dv.at_corner(flip_u(k)),
                            dv.at_corner(opposite(k)), s1, q);
}

double corner_lhs(const Surface& f, const Rect& rect, Corner k, const BoundOptions& opts) {
    return std::abs(lemma_lhs(f, rect, corner_point(rect, k), NormalizationMode::Corrected, opts.quad, opts.path));
}

void maybe_certify(BoundReport& report, const Surface& f, const Rect& rect, SExponent s, double q,
                   const BoundOptions& opts) {
    if (opts.certify) report.hypothesis_certified = hypothesis_holds(f, rect, s, q, opts.sampler);
}

BoundParams make_params(const Rect& rect, std::optional<EvalPoint> pt, SExponent s, std::optional<double> q,
                        NormalizationMode mode, std::optional<T3ConstantMode> constant) {
    BoundParams p;
    p.rect = rect;
    p.pt = pt;
    p.s = s.value();
    p.q = q;
    p.mode = mode;
    p.t3_constant = constant;
    return p;
}

double mean_u_at(const Surface& f, double v, double lo, double hi, const QuadConfig& cfg) {
    if (auto closed = f.integral_u_at(v, lo, hi)) return *closed / (hi - lo);
    return integrate_1d([&](double u) { return f.eval(u, v); }, lo, hi, cfg).value / (hi - lo);
}

double mean_v_at(const Surface& f, double u, double lo, double hi, const QuadConfig& cfg) {
    if (auto closed = f.integral_v_at(u, lo, hi)) return *closed / (hi - lo);
    return integrate_1d([&](double v) { return f.eval(u, v); }, lo, hi, cfg).value / (hi - lo);
}

}  // namespace

std::string_view to_string(TheoremId id) noexcept {
    for (const auto& e : kIdNames)
        if (e.id == id) return e.name;
    return "t1";
}

TheoremId parse_theorem_id(std::string_view text) {
    if (text == "mid") return TheoremId::C1_mid;
    for (const auto& e : kIdNames)
        if (e.name == text) return e.id;
    throw std::invalid_argument("unknown theorem id '" + std::string(text) + "'");
}

std::string_view to_string(BoundFamily family) noexcept {
    switch (family) {
        case BoundFamily::T1: return "t1";
        case BoundFamily::T2: return "t2";
        case BoundFamily::T3: return "t3";
    }
    return "t1";
}

TheoremId corner_theorem_id(BoundFamily family, Corner corner) noexcept {
    static constexpr std::array<TheoremId, 4> c1{TheoremId::C1_1, TheoremId::C1_2, TheoremId::C1_3, TheoremId::C1_4};
    static constexpr std::array<TheoremId, 4> c2{TheoremId::C2_1, TheoremId::C2_2, TheoremId::C2_3, TheoremId::C2_4};
    static constexpr std::array<TheoremId, 4> c3{TheoremId::C3_1, TheoremId::C3_2, TheoremId::C3_3, TheoremId::C3_4};
    const std::size_t part = corner_part(corner);
    switch (family) {
        case BoundFamily::T1: return c1[part];
        case BoundFamily::T2: return c2[part];
        case BoundFamily::T3: return c3[part];
    }
    return c1[part];
}

TheoremId midpoint_theorem_id(BoundFamily family) noexcept {
    switch (family) {
        case BoundFamily::T1: return TheoremId::C1_mid;
        case BoundFamily::T2: return TheoremId::C2_5;
        case BoundFamily::T3: return TheoremId::C3_5;
    }
    return TheoremId::C1_mid;
}

TheoremId remark_theorem_id(RemarkId remark) noexcept {
    switch (remark) {
        case RemarkId::C15: return TheoremId::R_c15;
        case RemarkId::METU: return TheoremId::R_metu;
        case RemarkId::FINAL: return TheoremId::R_final;
    }
    return TheoremId::R_c15;
}

void finalize(BoundReport& report, const Tolerance& tolerance) {
    report.margin = report.rhs - report.lhs;
    report.tol = tolerance.at(report.rhs);
    report.holds = report.margin >= -report.tol;
}

double mixed_abs(const Surface& f, const EvalPoint& pt) { return std::abs(f.mixed_partial(pt.x, pt.y)); }

double t1_rhs(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s) {
    const DValues dv = d_values(f, rect, pt);
    const double s1 = s.value() + 1.0, s2 = s.value() + 2.0;
    const double xa = (pt.x - rect.a()) * (pt.x - rect.a()), bx = (rect.b() - pt.x) * (rect.b() - pt.x);
    const double yc = (pt.y - rect.c()) * (pt.y - rect.c()), dy = (rect.d() - pt.y) * (rect.d() - pt.y);
    const double sx = xa + bx, sy = yc + dy;
    const double bracket = sx * sy / (s1 * s1) * dv.xy + xa * sy / s1 * dv.a_y + bx * sy / s1 * dv.b_y +
                           yc * sx / s1 * dv.x_c + dy * sx / s1 * dv.x_d + xa * yc * dv.at_corner(Corner::AC) +
                           xa * dy * dv.at_corner(Corner::AD) + bx * yc * dv.at_corner(Corner::BC) +
                           bx * dy * dv.at_corner(Corner::BD);
    return bracket / (rect.area() * s2 * s2);
}

double t2_rhs(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, HolderPair hp) {
    const DValues dv = d_values(f, rect, pt);
    const double q = hp.q();
    double sum = 0.0;
    for (Corner k : kQuadrantOrder) {
        const double w = quadrant_weight(rect, pt, k);
        if (w == 0.0) continue;
        sum += w * holder_brace(dv.xy, dv.edge_v(k), dv.edge_u(k), dv.at_corner(k), q);
    }
    return holder_factor(s, hp) * sum / rect.area();
}

double t3_rhs(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, PowerMeanQ pq,
              T3ConstantMode constant) {
    const DValues dv = d_values(f, rect, pt);
    const double q = pq.value(), s1 = s.value() + 1.0;
    double sum = 0.0;
    for (Corner k : kQuadrantOrder) {
        const double w = quadrant_weight(rect, pt, k);
        if (w == 0.0) continue;
        sum += w * power_mean_brace(dv.xy, dv.edge_v(k), dv.edge_u(k), dv.at_corner(k), s1, q);
    }
    const double prefactor = power_mean_prefactor(pq, constant) / std::pow(s1 * (s.value() + 2.0), 2.0 / q);
    return prefactor * sum / rect.area();
}

BoundReport t1_report(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, NormalizationMode mode,
                      const BoundOptions& opts) {
    BoundReport r;
    r.theorem_id = TheoremId::T1;
    r.params = make_params(rect, pt, s, std::nullopt, mode, std::nullopt);
    r.lhs = std::abs(lemma_lhs(f, rect, pt, mode, opts.quad, opts.path));
    r.rhs = t1_rhs(f, rect, pt, s);
    if (mode == NormalizationMode::Verbatim) r.notes.emplace_back(kNoteANormalization);
    maybe_certify(r, f, rect, s, 1.0, opts);
    finalize(r, opts.tolerance);
    return r;
}

BoundReport t2_report(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, HolderPair hp,
                      NormalizationMode mode, const BoundOptions& opts) {
    BoundReport r;
    r.theorem_id = TheoremId::T2;
    r.params = make_params(rect, pt, s, hp.q(), mode, std::nullopt);
    r.lhs = std::abs(lemma_lhs(f, rect, pt, mode, opts.quad, opts.path));
    r.rhs = t2_rhs(f, rect, pt, s, hp);
    if (mode == NormalizationMode::Verbatim) r.notes.emplace_back(kNoteANormalization);
    maybe_certify(r, f, rect, s, hp.q(), opts);
    finalize(r, opts.tolerance);
    return r;
}

BoundReport t3_report(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, PowerMeanQ q,
                      T3ConstantMode constant, NormalizationMode mode, const BoundOptions& opts) {
    BoundReport r;
    r.theorem_id = TheoremId::T3;
    r.params = make_params(rect, pt, s, q.value(), mode, constant);
    r.lhs = std::abs(lemma_lhs(f, rect, pt, mode, opts.quad, opts.path));
    r.rhs = t3_rhs(f, rect, pt, s, q, constant);
    if (mode == NormalizationMode::Verbatim) r.notes.emplace_back(kNoteANormalization);
    r.notes.emplace_back(kNoteT3Constant);
    maybe_certify(r, f, rect, s, q.value(), opts);
    finalize(r, opts.tolerance);
    return r;
}

double corner_rhs(BoundFamily family, Corner corner, const Surface& f, const Rect& rect, SExponent s,
                  std::optional<double> q, T3ConstantMode constant) {
    const DValues dv = d_values(f, rect, corner_point(rect, corner));
    const double area = rect.area(), s1 = s.value() + 1.0, s2 = s.value() + 2.0;
    switch (family) {
        case BoundFamily::T1:
            return area / (s2 * s2) *
                   (dv.at_corner(corner) / (s1 * s1) +
                    (dv.at_corner(flip_v(corner)) + dv.at_corner(flip_u(corner))) / s1 +
                    dv.at_corner(opposite(corner)));
        case BoundFamily::T2: {
            const HolderPair hp = make_holder_pair(require_q(q, "the Hoelder corner bound"));
            return area * holder_factor(s, hp) *
                   holder_brace(dv.corner[0], dv.corner[1], dv.corner[2], dv.corner[3], hp.q());
        }
        case BoundFamily::T3: {
            const PowerMeanQ pq(require_q(q, "the power-mean corner bound"));
            const double qq = pq.value();
            return area * std::exp2(2.0 - 2.0 / qq) / std::pow(s1 * s2, 2.0 / qq) *
                   c3_corner_brace(dv, corner, s1, qq) * t3_mode_factor(qq, constant);
        }
    }
    return 0.0;
}

BoundReport corner_report(BoundFamily family, Corner corner, const Surface& f, const Rect& rect, SExponent s,
                          std::optional<double> q, T3ConstantMode constant, const BoundOptions& opts) {
    BoundReport r;
    r.theorem_id = corner_theorem_id(family, corner);
    const bool t3 = family == BoundFamily::T3;
    r.params = make_params(rect, corner_point(rect, corner), s, family == BoundFamily::T1 ? std::nullopt : q,
                           NormalizationMode::Corrected, t3 ? std::optional(constant) : std::nullopt);
    r.lhs = corner_lhs(f, rect, corner, opts);
    r.rhs = corner_rhs(family, corner, f, rect, s, q, constant);
    r.notes.emplace_back(kNoteANormalization);
    if (t3) r.notes.emplace_back(kNoteT3Constant);
    maybe_certify(r, f, rect, s, family == BoundFamily::T1 ? 1.0 : *q, opts);
    finalize(r, opts.tolerance);
    return r;
}

double midpoint_lhs(const Surface& f, const Rect& rect, const QuadConfig& cfg, IntegrationPath path) {
    const BoundaryIntegrals bi = boundary_integrals(f, rect, cfg, path);
    double corners = 0.0;
    for (const EvalPoint& p : corner_points(rect)) corners += f.eval(p.x, p.y);
    const double w = rect.width(), h = rect.height();
    const double edge_means = bi.along_a / h + bi.along_b / h + bi.along_c / w + bi.along_d / w;
    return std::abs(0.25 * corners - 0.5 * edge_means + bi.area_integral / rect.area());
}

double midpoint_rhs(BoundFamily family, const Surface& f, const Rect& rect, SExponent s, std::optional<double> q,
                    T3ConstantMode constant) {
    const EvalPoint mid = midpoint(rect);
    const DValues dv = d_values(f, rect, mid);
    const double area = rect.area(), s1 = s.value() + 1.0, s2 = s.value() + 2.0;
    switch (family) {
        case BoundFamily::T1: {
            const double corners = dv.corner[0] + dv.corner[1] + dv.corner[2] + dv.corner[3];
            return area / (4.0 * s2 * s2) *
                   (dv.xy / (s1 * s1) + (dv.a_y + dv.b_y) / (2.0 * s1) + (dv.x_c + dv.x_d) / (2.0 * s1) +
                    0.25 * corners);
        }
        case BoundFamily::T2: {
            const HolderPair hp = make_holder_pair(require_q(q, "the Hoelder midpoint bound"));
            double sum = 0.0;
            for (Corner k : kQuadrantOrder)
                sum += holder_brace(dv.xy, dv.edge_v(k), dv.edge_u(k), dv.at_corner(k), hp.q());
            return area / 16.0 * holder_factor(s, hp) * sum;
        }
        case BoundFamily::T3: {
            const PowerMeanQ pq(require_q(q, "the power-mean midpoint bound"));
            const double qq = pq.value();
            double sum = 0.0;
            for (Corner k : kQuadrantOrder)
                sum += power_mean_brace(dv.xy, dv.edge_v(k), dv.edge_u(k), dv.at_corner(k), s1, qq);
            return area / (4.0 * std::pow(2.0 * s1 * s2, 2.0 / qq)) * sum * t3_mode_factor(qq, constant);
        }
    }
    return 0.0;
}

BoundReport midpoint_report(BoundFamily family, const Surface& f, const Rect& rect, SExponent s,
                            std::optional<double> q, T3ConstantMode constant, const BoundOptions& opts) {
    BoundReport r;
    r.theorem_id = midpoint_theorem_id(family);
    const bool t3 = family == BoundFamily::T3;
    r.params = make_params(rect, midpoint(rect), s, family == BoundFamily::T1 ? std::nullopt : q,
                           NormalizationMode::Corrected, t3 ? std::optional(constant) : std::nullopt);
    r.lhs = midpoint_lhs(f, rect, opts.quad, opts.path);
    r.rhs = midpoint_rhs(family, f, rect, s, q, constant);
    r.notes.emplace_back(kNoteANormalization);
    if (t3) r.notes.emplace_back(kNoteT3Constant);
    maybe_certify(r, f, rect, s, family == BoundFamily::T1 ? 1.0 : *q, opts);
    finalize(r, opts.tolerance);
    return r;
}

double remark_rhs(RemarkId remark, const Surface& f, const Rect& rect, SExponent s, std::optional<double> q,
                  T3ConstantMode constant) {
    std::array<double, 4> d{};
    for (Corner k : kCorners) d[static_cast<std::size_t>(k)] = mixed_abs(f, corner_point(rect, k));
    const double area2 = rect.area() * rect.area(), s1 = s.value() + 1.0, s2 = s.value() + 2.0;
    switch (remark) {
        case RemarkId::C15: return area2 / (s1 * s1) * (d[0] + d[1] + d[2] + d[3]);
        case RemarkId::METU: {
            const HolderPair hp = make_holder_pair(require_q(q, "the summed Hoelder bound"));
            return 4.0 * area2 * holder_factor(s, hp) * holder_brace(d[0], d[1], d[2], d[3], hp.q());
        }
        case RemarkId::FINAL: {
            const PowerMeanQ pq(require_q(q, "the summed power-mean bound"));
            const double qq = pq.value();
            DValues dv{};
            dv.corner = d;
            double sum = 0.0;
            for (Corner k : kCorners) sum += c3_corner_brace(dv, k, s1, qq);
            return 4.0 * area2 / std::pow(2.0 * s1 * s2, 2.0 / qq) * sum * t3_mode_factor(qq, constant);
        }
    }
    return 0.0;
}

BoundReport remark_aggregate(RemarkId remark, const Surface& f, const Rect& rect, SExponent s,
                             std::optional<double> q, T3ConstantMode constant, const BoundOptions& opts) {
    BoundReport r;
    r.theorem_id = remark_theorem_id(remark);
    const bool final_remark = remark == RemarkId::FINAL;
    r.params = make_params(rect, std::nullopt, s, remark == RemarkId::C15 ? std::nullopt : q,
                           NormalizationMode::Corrected, final_remark ? std::optional(constant) : std::nullopt);
    double lhs = 0.0;
    for (Corner k : kCorners) lhs += rect.area() * corner_lhs(f, rect, k, opts);
    r.lhs = lhs;
    r.rhs = remark_rhs(remark, f, rect, s, q, constant);
    r.notes.emplace_back(kNoteANormalization);
    if (final_remark) r.notes.emplace_back(kNoteT3Constant);
    maybe_certify(r, f, rect, s, remark == RemarkId::C15 ? 1.0 : *q, opts);
    finalize(r, opts.tolerance);
    return r;
}

ChainEvaluation chain_evaluate(const Surface& f, const Rect& rect, SExponent s, const QuadConfig& cfg, double tol,
                               bool certify, const SamplerConfig& sampler) {
    ChainEvaluation ch;
    ch.tol = tol;
    if (certify) {
        ch.hypothesis_certified =
            certify_coordinated(f, rect, s, sampler).verdict == CertificationVerdict::NoCounterexampleFound;
    }
    const double sv = s.value();
    const EvalPoint mid = midpoint(rect);
    const BoundaryIntegrals bi = boundary_integrals(f, rect, cfg, IntegrationPath::Auto);
    const double w = rect.width(), h = rect.height();

    ch.e[0] = std::pow(4.0, sv - 1.0) * f.eval(mid.x, mid.y);
    ch.e[1] = std::pow(2.0, sv - 2.0) *
              (mean_u_at(f, mid.y, rect.a(), rect.b(), cfg) + mean_v_at(f, mid.x, rect.c(), rect.d(), cfg));
    ch.e[2] = bi.area_integral / rect.area();
    ch.e[3] = (bi.along_a / h + bi.along_b / h + bi.along_c / w + bi.along_d / w) / (2.0 * (sv + 1.0));
    double corners = 0.0;
    for (const EvalPoint& p : corner_points(rect)) corners += f.eval(p.x, p.y);
    ch.e[4] = corners / ((sv + 1.0) * (sv + 1.0));

    ch.monotone = true;
    for (std::size_t i = 0; i + 1 < ch.e.size(); ++i)
        if (!(ch.e[i] <= ch.e[i + 1] + tol)) ch.monotone = false;
    return ch;
}

bool hypothesis_holds(const Surface& f, const Rect& rect, SExponent s, double q, const SamplerConfig& sampler) {
    return certify_coordinated(abs_mixed_power(f, q), rect, s, sampler).verdict ==
           CertificationVerdict::NoCounterexampleFound;
}

}  // namespace hadamard
