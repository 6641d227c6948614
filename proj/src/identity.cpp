#include "hadamard/identity.hpp"

#include <cmath>
#include <stdexcept>

#include "hadamard/errors.hpp"

namespace hadamard {

namespace {

// Geometry of one quadrant term: the mapped point is
// (u0 + (x - u0) t, v0 + (y - v0) l) and the kernel is sign * (1-t)(1-l).
template <typename T>
struct Quadrant {
    T u0, v0, wx, wy;
    int sign;
};

template <typename T>
Quadrant<T> quadrant(Corner k, const T& a, const T& b, const T& c, const T& d, const T& x, const T& y) {
    const bool a_side = k == Corner::AC || k == Corner::AD;
    const bool c_side = k == Corner::AC || k == Corner::BC;
    const T u0 = a_side ? a : b;
    const T v0 = c_side ? c : d;
    const int sign = (a_side == c_side) ? 1 : -1;
    return {u0, v0, x - u0, y - v0, sign};
}

const Poly2<Rational>& unit_kernel() {
    static const Poly2<Rational> k = [] {
        Poly2<Rational> p(1, 1);
        p.at(0, 0) = 1;
        p.at(1, 0) = -1;
        p.at(0, 1) = -1;
        p.at(1, 1) = 1;
        return p;
    }();
    return k;
}

const Poly2<Rational>& require_polynomial(const Surface& f) {
    const Poly2<Rational>* p = f.exact_polynomial();
    if (!p) throw std::invalid_argument("the exact integration path needs a polynomial surface");
    return *p;
}

template <typename T>
T weighted_corner_sum(const T& a, const T& b, const T& c, const T& d, const T& x, const T& y, const T& fac,
                      const T& fad, const T& fbc, const T& fbd) {
    return (x - a) * (y - c) * fac + (x - a) * (d - y) * fad + (b - x) * (y - c) * fbc + (b - x) * (d - y) * fbd;
}

template <typename T>
T assemble_lhs(const T& a, const T& b, const T& c, const T& d, const T& x, const T& y, const T& a_term,
               const T& along_a, const T& along_b, const T& along_c, const T& along_d, const T& area_integral) {
    const T area = (b - a) * (d - c);
    return (a_term - (x - a) * along_a - (b - x) * along_b - (d - y) * along_d - (y - c) * along_c + area_integral) /
           area;
}

}  // namespace

std::string_view to_string(IntegrationPath path) noexcept {
    switch (path) {
        case IntegrationPath::Auto: return "auto";
        case IntegrationPath::Quadrature: return "quadrature";
        case IntegrationPath::Exact: return "exact";
    }
    return "auto";
}

BoundaryIntegrals boundary_integrals(const Surface& f, const Rect& rect, const QuadConfig& cfg,
                                     IntegrationPath path) {
    const double a = rect.a(), b = rect.b(), c = rect.c(), d = rect.d();
    BoundaryIntegrals out;
    if (path == IntegrationPath::Exact) {
        const Poly2<Rational>& p = require_polynomial(f);
        const RationalRect r = RationalRect::from_rect(rect);
        out.along_a = to_double(p.integrate_v_at(r.a(), r.c(), r.d()));
        out.along_b = to_double(p.integrate_v_at(r.b(), r.c(), r.d()));
        out.along_c = to_double(p.integrate_u_at(r.c(), r.a(), r.b()));
        out.along_d = to_double(p.integrate_u_at(r.d(), r.a(), r.b()));
        out.area_integral = to_double(p.integrate_box(r.a(), r.b(), r.c(), r.d()));
        return out;
    }
    if (path == IntegrationPath::Auto && f.has_closed_form_integrals()) {
        out.along_a = *f.integral_v_at(a, c, d);
        out.along_b = *f.integral_v_at(b, c, d);
        out.along_c = *f.integral_u_at(c, a, b);
        out.along_d = *f.integral_u_at(d, a, b);
        out.area_integral = *f.integral_box(a, b, c, d);
        return out;
    }
    out.along_a = integrate_1d([&](double v) { return f.eval(a, v); }, c, d, cfg).value;
    out.along_b = integrate_1d([&](double v) { return f.eval(b, v); }, c, d, cfg).value;
    out.along_c = integrate_1d([&](double u) { return f.eval(u, c); }, a, b, cfg).value;
    out.along_d = integrate_1d([&](double u) { return f.eval(u, d); }, a, b, cfg).value;
    out.area_integral = integrate_2d(f, rect, cfg).value;
    return out;
}

double corner_term_A(const Surface& f, const Rect& rect, const EvalPoint& pt, NormalizationMode mode) {
    require_inside(rect, pt);
    const double a = rect.a(), b = rect.b(), c = rect.c(), d = rect.d();
    const double sum = weighted_corner_sum(a, b, c, d, pt.x, pt.y, f.eval(a, c), f.eval(a, d), f.eval(b, c),
                                           f.eval(b, d));
    return mode == NormalizationMode::Verbatim ? sum / rect.area() : sum;
}

double lemma_lhs(const Surface& f, const Rect& rect, const EvalPoint& pt, NormalizationMode mode,
                 const QuadConfig& cfg, IntegrationPath path) {
    require_inside(rect, pt);
    if (path == IntegrationPath::Exact) {
        const RationalPoint rp{exact_rational(pt.x), exact_rational(pt.y)};
        return to_double(lemma_residual_exact(require_polynomial(f), RationalRect::from_rect(rect), rp, mode).lhs);
    }
    const BoundaryIntegrals bi = boundary_integrals(f, rect, cfg, path);
    return assemble_lhs(rect.a(), rect.b(), rect.c(), rect.d(), pt.x, pt.y, corner_term_A(f, rect, pt, mode),
                        bi.along_a, bi.along_b, bi.along_c, bi.along_d, bi.area_integral);
}

double lemma_rhs(const Surface& f, const Rect& rect, const EvalPoint& pt, const QuadConfig& cfg,
                 IntegrationPath path) {
    return lemma_residual(f, rect, pt, NormalizationMode::Corrected, cfg, path).rhs;
}

LemmaEvaluation lemma_residual(const Surface& f, const Rect& rect, const EvalPoint& pt, NormalizationMode mode,
                               const QuadConfig& cfg, IntegrationPath path) {
    require_inside(rect, pt);
    LemmaEvaluation ev;
    ev.mode = mode;
    ev.path = path;

    if (path == IntegrationPath::Exact) {
        const RationalPoint rp{exact_rational(pt.x), exact_rational(pt.y)};
        const ExactLemmaEvaluation ex =
            lemma_residual_exact(require_polynomial(f), RationalRect::from_rect(rect), rp, mode);
        ev.lhs = to_double(ex.lhs);
        ev.a_term = to_double(ex.a_term);
        ev.rhs = 0.0;
        for (std::size_t k = 0; k < 4; ++k) {
            ev.quadrant_terms[k] = to_double(ex.quadrant_terms[k]);
            ev.rhs += ev.quadrant_terms[k];
        }
        ev.residual = std::abs(to_double(ex.residual));
        return ev;
    }

    ev.a_term = corner_term_A(f, rect, pt, mode);
    const BoundaryIntegrals bi = boundary_integrals(f, rect, cfg, path);
    ev.lhs = assemble_lhs(rect.a(), rect.b(), rect.c(), rect.d(), pt.x, pt.y, ev.a_term, bi.along_a, bi.along_b,
                          bi.along_c, bi.along_d, bi.area_integral);

    const Rect unit(0.0, 1.0, 0.0, 1.0);
    for (std::size_t k = 0; k < 4; ++k) {
        const auto q = quadrant(kQuadrantOrder[k], rect.a(), rect.b(), rect.c(), rect.d(), pt.x, pt.y);
        const double coef = q.wx * q.wx * q.wy * q.wy / rect.area();
        if (coef == 0.0) continue;
        const auto integrand = [&](double t, double l) {
            return (1.0 - t) * (1.0 - l) * f.mixed_partial(q.u0 + q.wx * t, q.v0 + q.wy * l);
        };
        ev.quadrant_terms[k] = q.sign * coef * integrate_2d(integrand, unit, cfg).value;
    }
    ev.rhs = ev.quadrant_terms[0] + ev.quadrant_terms[1] + ev.quadrant_terms[2] + ev.quadrant_terms[3];
    ev.residual = std::abs(ev.lhs - ev.rhs);
    return ev;
}

ExactLemmaEvaluation lemma_residual_exact(const Poly2<Rational>& p, const RationalRect& rect,
                                          const RationalPoint& pt, NormalizationMode mode) {
    if (!rect.contains(pt)) throw DomainError("evaluation point lies outside the rectangle");
    const Rational &a = rect.a(), &b = rect.b(), &c = rect.c(), &d = rect.d();
    const Rational &x = pt.x, &y = pt.y;
    const Rational area = rect.area();

    ExactLemmaEvaluation ev;
    ev.mode = mode;
    ev.a_term = weighted_corner_sum(a, b, c, d, x, y, p.eval(a, c), p.eval(a, d), p.eval(b, c), p.eval(b, d));
    if (mode == NormalizationMode::Verbatim) ev.a_term /= area;
    ev.lhs = assemble_lhs(a, b, c, d, x, y, ev.a_term, p.integrate_v_at(a, c, d), p.integrate_v_at(b, c, d),
                          p.integrate_u_at(c, a, b), p.integrate_u_at(d, a, b), p.integrate_box(a, b, c, d));

    const Poly2<Rational> mixed = p.mixed_partial();
    ev.rhs = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        const auto q = quadrant(kQuadrantOrder[k], a, b, c, d, x, y);
        const Rational coef = q.wx * q.wx * q.wy * q.wy / area;
        ev.quadrant_terms[k] = 0;
        if (coef == 0) continue;
        const Poly2<Rational> integrand = mixed.compose_affine(q.u0, q.wx, q.v0, q.wy) * unit_kernel();
        ev.quadrant_terms[k] = Rational(q.sign) * coef * integrand.integrate_box(0, 1, 0, 1);
        ev.rhs += ev.quadrant_terms[k];
    }
    ev.residual = abs(ev.lhs - ev.rhs);
    return ev;
}

}  // namespace hadamard
