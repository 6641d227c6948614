#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hadamard/catalog.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/identity.hpp"
#include "oracles.hpp"

using namespace hadamard;

namespace {

const Surface& uv() {
    static const Surface s = parse_surface("u*v");
    return s;
}

}  // namespace

TEST(CornerTermA, Constant) {
    const Rect r(0, 2, 1, 4);
    const Surface k = constant_surface(3.0);
    const EvalPoint pt{0.5, 2.0};
    EXPECT_DOUBLE_EQ(corner_term_A(k, r, pt, NormalizationMode::Corrected), 3.0 * r.area());
    EXPECT_DOUBLE_EQ(corner_term_A(k, r, pt, NormalizationMode::Verbatim), 3.0);
}

TEST(CornerTermA, BilinearMidpoint) {
    const Rect unit(0, 1, 0, 1);
    for (auto mode : {NormalizationMode::Corrected, NormalizationMode::Verbatim})
        EXPECT_DOUBLE_EQ(corner_term_A(uv(), unit, {0.5, 0.5}, mode), 0.25);
}

TEST(CornerTermA, OutsidePoint) {
    EXPECT_THROW(corner_term_A(uv(), Rect(0, 1, 0, 1), {2, 0}, NormalizationMode::Corrected), DomainError);
}

TEST(LemmaLhs, ConstantVanishes) {
    const Surface k = constant_surface(2.5);
    for (const Rect& r : {Rect(0, 1, 0, 1), Rect(0, 2, 0, 1), Rect(-1, 3, 0.5, 0.75)})
        for (double fx : {0.0, 0.3, 1.0})
            for (double fy : {0.0, 0.6, 1.0}) {
                const EvalPoint pt{r.a() + fx * r.width(), r.c() + fy * r.height()};
                EXPECT_NEAR(lemma_lhs(k, r, pt, NormalizationMode::Corrected), 0.0, 1e-14);
                EXPECT_EQ(lemma_lhs(k, r, pt, NormalizationMode::Corrected, {}, IntegrationPath::Exact), 0.0);
            }
}

TEST(LemmaLhs, BilinearExamples) {
    // Oracle: (1/2)(4 - 2*1 - 1*2 + 1).
    const oracle::Poly p{{1, 1, 1}};
    EXPECT_EQ(oracle::lemma_lhs(p, 0, 2, 0, 1, 0, 0), Rational(1, 2));
    EXPECT_NEAR(lemma_lhs(uv(), Rect(0, 2, 0, 1), {0, 0}, NormalizationMode::Corrected), 0.5, 1e-15);
    EXPECT_NEAR(lemma_lhs(uv(), Rect(0, 1, 0, 1), {0.5, 0.5}, NormalizationMode::Corrected), 0.0, 1e-15);
}

TEST(LemmaRhs, BilinearClosedForm) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(-2.0, 2.0), len(0.2, 3.0), frac(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double a = coord(rng), c = coord(rng);
        const Rect r(a, a + len(rng), c, c + len(rng));
        const EvalPoint pt{r.a() + frac(rng) * r.width(), r.c() + frac(rng) * r.height()};
        const double xa = pt.x - r.a(), bx = r.b() - pt.x, yc = pt.y - r.c(), dy = r.d() - pt.y;
        const double closed = (xa * xa - bx * bx) * (yc * yc - dy * dy) / (4 * r.area());
        EXPECT_NEAR(lemma_rhs(uv(), r, pt), closed, 1e-11);
    }
}

TEST(LemmaRhs, Examples) {
    EXPECT_NEAR(lemma_rhs(uv(), Rect(0, 2, 0, 1), {0, 0}), 0.5, 1e-15);
    EXPECT_EQ(lemma_rhs(constant_surface(4), Rect(0, 2, 0, 1), {0.3, 0.2}), 0.0);
}

TEST(LemmaResidual, Examples) {
    const auto ev = lemma_residual(uv(), Rect(0, 2, 0, 1), {0, 0}, NormalizationMode::Corrected);
    EXPECT_LE(ev.residual, 1e-12);
    EXPECT_NEAR(ev.lhs, 0.5, 1e-12);
    EXPECT_DOUBLE_EQ(ev.rhs, ev.quadrant_terms[0] + ev.quadrant_terms[1] + ev.quadrant_terms[2] + ev.quadrant_terms[3]);
    // Only the (b,d) quadrant survives at (a,c).
    EXPECT_EQ(ev.quadrant_terms[0], 0.0);
    EXPECT_EQ(ev.quadrant_terms[1], 0.0);
    EXPECT_EQ(ev.quadrant_terms[2], 0.0);
}

TEST(LemmaResidual, VerbatimConstantDefect) {
    const double k = 1.7;
    const Rect r(0, 2, 0, 1);
    const auto ev = lemma_residual(constant_surface(k), r, {0.5, 0.5}, NormalizationMode::Verbatim);
    EXPECT_NEAR(ev.residual, std::abs(k * (1 - r.area()) / r.area()), 1e-14);
    const auto ok = lemma_residual(constant_surface(k), r, {0.5, 0.5}, NormalizationMode::Corrected);
    EXPECT_EQ(ok.residual, 0.0);
}

TEST(LemmaResidual, ModesCoincideOnUnitArea) {
    const Rect r(0.5, 1.5, 1, 2);
    const Rect r2(0, 4, 0, 0.25);
    for (const auto& e : catalog()) {
        for (const Rect& rr : {r, r2}) {
            const EvalPoint pt{rr.a() + 0.3 * rr.width(), rr.c() + 0.8 * rr.height()};
            const auto v = lemma_residual(e.surface, rr, pt, NormalizationMode::Verbatim);
            const auto c = lemma_residual(e.surface, rr, pt, NormalizationMode::Corrected);
            EXPECT_LE(std::abs(v.lhs - c.lhs), 1e-14) << e.name;
            EXPECT_LE(std::abs(v.residual - c.residual), 1e-14) << e.name;
        }
    }
}

// Property: corrected identity over catalog polynomials, rational rects and a
// 5x5 grid including boundary points.
TEST(LemmaResidual, CatalogPolynomialsAllPaths) {
    const std::vector<RationalRect> rects{RationalRect(0, 1, 0, 1), RationalRect(0, 2, 0, 1),
                                          RationalRect(Rational(1, 2), Rational(5, 2), 1, 3),
                                          RationalRect(-1, Rational(1, 3), Rational(-7, 4), 2)};
    for (const auto& e : catalog()) {
        const Poly2<Rational>* p = e.surface.exact_polynomial();
        if (!p) continue;
        for (const auto& rr : rects) {
            const Rect r = rr.to_rect();
            for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j) {
                    const RationalPoint rp{rr.a() + (rr.b() - rr.a()) * Rational(i, 4),
                                           rr.c() + (rr.d() - rr.c()) * Rational(j, 4)};
                    const auto ex = lemma_residual_exact(*p, rr, rp, NormalizationMode::Corrected);
                    EXPECT_EQ(ex.residual, 0) << e.name;
                    const EvalPoint pt{to_double(rp.x), to_double(rp.y)};
                    const auto quad = lemma_residual(e.surface, r, pt, NormalizationMode::Corrected, {},
                                                     IntegrationPath::Quadrature);
                    EXPECT_LE(quad.residual, 1e-10) << e.name;
                    const auto exact_path = lemma_residual(e.surface, r, pt, NormalizationMode::Corrected, {},
                                                           IntegrationPath::Exact);
                    EXPECT_LE(exact_path.residual, 1e-12) << e.name;
                }
        }
    }
}

// Oracle: independent monomial antiderivatives for the left side.
TEST(LemmaResidualExact, MatchesIndependentOracle) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> coeff(-5, 5), deg(0, 4);
    for (int trial = 0; trial < 30; ++trial) {
        oracle::Poly p;
        for (int m = 0; m < 4; ++m) p.push_back({Rational(coeff(rng), 1 + trial % 3), deg(rng), deg(rng)});
        const Rational a(trial % 3 - 1), b = a + Rational(3, 2 + trial % 2), c(Rational(-1, 3)), d(2);
        const RationalPoint pt{a + (b - a) * Rational(trial % 5, 4), c + (d - c) * Rational(trial % 4, 3)};
        const auto ex = lemma_residual_exact(oracle::to_poly2(p), RationalRect(a, b, c, d), pt,
                                             NormalizationMode::Corrected);
        EXPECT_EQ(ex.lhs, oracle::lemma_lhs(p, a, b, c, d, pt.x, pt.y));
        EXPECT_EQ(ex.rhs, ex.lhs);
        const auto vb = lemma_residual_exact(oracle::to_poly2(p), RationalRect(a, b, c, d), pt,
                                             NormalizationMode::Verbatim);
        EXPECT_EQ(vb.lhs, oracle::lemma_lhs(p, a, b, c, d, pt.x, pt.y, true));
    }
}

TEST(LemmaResidual, PowerProductsQuadraturePath) {
    const Rect r(0.5, 2.5, 1, 3);
    for (const char* name : {"pow_2.5_2", "pow_2.5_3", "pow_3_2.5", "pow_2.5_2.5"}) {
        const auto e = lookup_catalog(name);
        ASSERT_TRUE(e);
        for (double fx : {0.0, 0.25, 0.5, 1.0}) {
            const EvalPoint pt{r.a() + fx * r.width(), r.c() + (1 - fx) * r.height()};
            const auto ev = lemma_residual(e->surface, r, pt, NormalizationMode::Corrected);
            EXPECT_LE(ev.residual, 1e-10) << name;
        }
    }
}

TEST(LemmaResidual, ExpressionSurface) {
    const Surface f = Surface::expression([](double u, double v) { return std::exp(u * v); },
                                          [](double u, double v) { return std::exp(u * v) * (1 + u * v); });
    const auto ev = lemma_residual(f, Rect(0, 1, -0.5, 0.5), {0.3, 0.1}, NormalizationMode::Corrected);
    EXPECT_LE(ev.residual, 1e-10);
}

TEST(LemmaResidual, ExactPathNeedsPolynomial) {
    EXPECT_THROW(lemma_residual(parse_surface("u^2.5*v"), Rect(0, 1, 0, 1), {0.5, 0.5}, NormalizationMode::Corrected,
                                {}, IntegrationPath::Exact),
                 std::invalid_argument);
}
