#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "hadamard/bounds.hpp"
#include "hadamard/identity.hpp"
#include "hadamard/quad.hpp"
#include "oracles.hpp"

using namespace hadamard;

namespace {

Poly2<Rational> random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> deg(0, max_degree), num(-9, 9), den(1, 5), terms(1, 8);
    Poly2<Rational> p(max_degree, max_degree);
    const int n = terms(rng);
    for (int t = 0; t < n; ++t) p.at(deg(rng), deg(rng)) += Rational(num(rng), den(rng));
    return p;
}

RationalRect random_rect(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> lo(-8, 8), len(1, 12);
    const Rational a(lo(rng), 4), c(lo(rng), 3);
    return RationalRect(a, a + Rational(len(rng), 4), c, c + Rational(len(rng), 5));
}

}  // namespace

// Adaptive quadrature against exact rational integration on random
// polynomials of degree <= 6 per variable.
TEST(Property, QuadratureMatchesExactOnPolynomials) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_poly(rng, 6);
        const auto rr = random_rect(rng);
        const double exact = to_double(poly_integral_exact(p, rr));
        const Surface f = Surface::polynomial(p);
        const double quad = integrate_2d(f, rr.to_rect()).value;
        EXPECT_LE(std::abs(quad - exact), 1e-11 * std::max(1.0, std::abs(exact))) << i;
    }
}

// Exact integration against the independent monomial oracle.
TEST(Property, ExactIntegralMatchesOracle) {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<int> deg(0, 6), num(-9, 9);
    for (int i = 0; i < 100; ++i) {
        oracle::Poly p;
        for (int t = 0; t < 5; ++t) p.push_back({Rational(num(rng), 1 + t), deg(rng), deg(rng)});
        const auto rr = random_rect(rng);
        EXPECT_EQ(poly_integral_exact(oracle::to_poly2(p), rr), oracle::int_box(p, rr.a(), rr.b(), rr.c(), rr.d()));
    }
}

// At pt = corner K only the quadrant anchored at the opposite corner has a
// nonzero weight; quadrant_terms follows the kCorners order.
TEST(Property, CornerOrderSharedByQuadrants) {
    const Surface f = parse_surface("u^2*v + 3*u*v^3");
    const Rect r(0.5, 2, -1, 1.5);
    for (std::size_t k = 0; k < kCorners.size(); ++k) {
        const auto ev = lemma_residual(f, r, corner_point(r, kCorners[k]), NormalizationMode::Corrected);
        const auto opp = static_cast<std::size_t>(
            std::find(kCorners.begin(), kCorners.end(), opposite(kCorners[k])) - kCorners.begin());
        for (std::size_t j = 0; j < 4; ++j) {
            if (j == opp)
                EXPECT_NE(ev.quadrant_terms[j], 0.0);
            else
                EXPECT_EQ(ev.quadrant_terms[j], 0.0);
        }
        EXPECT_EQ(corner_points(r)[k], corner_point(r, kCorners[k]));
    }
}

// Translating f and the rectangle together leaves both sides unchanged.
TEST(Property, TranslationInvariance) {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> shift(-3, 3), frac(0, 1);
    const Surface f = parse_surface("u^3*v^2 - 2*u*v + v^4");
    const Rect r(0.2, 1.7, 0.4, 1.1);
    for (int i = 0; i < 20; ++i) {
        const double h = shift(rng), k = shift(rng);
        const Surface g = Surface::expression(
            [f, h, k](double u, double v) { return f.eval(u - h, v - k); },
            [f, h, k](double u, double v) { return f.mixed_partial(u - h, v - k); });
        const Rect rs(r.a() + h, r.b() + h, r.c() + k, r.d() + k);
        const EvalPoint pt{r.a() + frac(rng) * r.width(), r.c() + frac(rng) * r.height()};
        const EvalPoint ps{pt.x + h, pt.y + k};
        const auto a = lemma_residual(f, r, pt, NormalizationMode::Corrected);
        const auto b = lemma_residual(g, rs, ps, NormalizationMode::Corrected);
        EXPECT_NEAR(a.lhs, b.lhs, 1e-10);
        EXPECT_NEAR(a.rhs, b.rhs, 1e-10);
        EXPECT_LE(b.residual, 1e-10);
        EXPECT_NEAR(t1_rhs(f, r, pt, SExponent(0.5)), t1_rhs(g, rs, ps, SExponent(0.5)), 1e-12);
    }
}

// The three integration paths agree on random polynomials of degree <= 4.
TEST(Property, IntegrationPathsAgree) {
    std::mt19937_64 rng(53);
    std::uniform_int_distribution<int> step(0, 4);
    for (int i = 0; i < 60; ++i) {
        const auto p = random_poly(rng, 4);
        const auto rr = random_rect(rng);
        const RationalPoint rp{rr.a() + (rr.b() - rr.a()) * Rational(step(rng), 4),
                               rr.c() + (rr.d() - rr.c()) * Rational(step(rng), 4)};
        const EvalPoint pt{to_double(rp.x), to_double(rp.y)};
        const Surface f = Surface::polynomial(p);
        const auto ex = lemma_residual_exact(p, rr, rp, NormalizationMode::Corrected);
        EXPECT_EQ(ex.residual, 0);
        const double lhs_exact = to_double(ex.lhs);
        const double scale = std::max(1.0, std::abs(lhs_exact));
        for (auto path : {IntegrationPath::Auto, IntegrationPath::Quadrature, IntegrationPath::Exact}) {
            const auto ev = lemma_residual(f, rr.to_rect(), pt, NormalizationMode::Corrected, {}, path);
            EXPECT_LE(std::abs(ev.lhs - lhs_exact), 1e-10 * scale) << to_string(path);
            EXPECT_LE(ev.residual, 1e-10 * scale) << to_string(path);
        }
    }
}
