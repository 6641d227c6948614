#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hadamard/catalog.hpp"
#include "hadamard/certify.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/surface.hpp"

using namespace hadamard;

TEST(Eval, Examples) {
    EXPECT_DOUBLE_EQ(eval(parse_surface("u*v"), 2, 3), 6.0);
    EXPECT_DOUBLE_EQ(eval(parse_surface("u^2*v^2"), 1, 1), 1.0);
    const Surface k = constant_surface(4.25);
    EXPECT_DOUBLE_EQ(eval(k, -3, 17), 4.25);
}

TEST(Eval, NonFiniteIsAnError) {
    const Surface f = parse_surface("u^0.5*v");
    EXPECT_THROW(eval(f, -1.0, 1.0), EvalError);
    const Surface g = Surface::numeric([](double u, double) { return 1.0 / u; });
    EXPECT_THROW(eval(g, 0.0, 1.0), EvalError);
}

TEST(MixedPartial, Examples) {
    const Surface uv = parse_surface("u*v");
    EXPECT_DOUBLE_EQ(mixed_partial(uv, 0.3, -7.0), 1.0);
    const Surface quartic = parse_surface("u^2*v^2");
    EXPECT_DOUBLE_EQ(mixed_partial(quartic, 0.5, 3.0), 4 * 0.5 * 3.0);
    EXPECT_DOUBLE_EQ(mixed_partial(parse_surface("u^3*v^3"), 1, 1), 9.0);
    EXPECT_DOUBLE_EQ(mixed_partial(constant_surface(3), 1, 2), 0.0);
}

TEST(Poly2, MixedPartialCoefficients) {
    Poly2<Rational> p(3, 2);
    p.at(3, 2) = 5;
    p.at(1, 1) = -2;
    p.at(2, 0) = 7;
    const Poly2<Rational> m = p.mixed_partial();
    EXPECT_EQ(m.coeff(2, 1), Rational(30));
    EXPECT_EQ(m.coeff(0, 0), Rational(-2));
    EXPECT_EQ(m.coeff(1, 0), Rational(0));
}

TEST(Parse, Kinds) {
    EXPECT_EQ(parse_surface("u*v").kind(), SurfaceKind::Polynomial);
    EXPECT_EQ(parse_surface("u^2*v^2 + 3").kind(), SurfaceKind::Polynomial);
    EXPECT_EQ(parse_surface("u^2.5*v^3").kind(), SurfaceKind::PowerProduct);
    EXPECT_EQ(parse_surface("(u+v)^0.5").kind(), SurfaceKind::NumericOnly);
    EXPECT_EQ(parse_surface("u^9").kind(), SurfaceKind::PowerProduct);
}

TEST(Parse, PolynomialMixedPartial) {
    const Surface f = parse_surface("u^2*v^2 + 3");
    for (double u : {0.0, 0.5, 2.0})
        for (double v : {0.0, 1.5, -1.0}) EXPECT_DOUBLE_EQ(f.mixed_partial(u, v), 4 * u * v);
}

TEST(Parse, ErrorOffsetAndExpected) {
    try {
        parse_surface("u*");
        FAIL() << "no ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 2u);
        EXPECT_FALSE(e.expected().empty());
        EXPECT_NE(std::string(e.what()).find("offset 2"), std::string::npos);
    }
}

TEST(Parse, Errors) {
    EXPECT_THROW(parse_surface(""), ParseError);
    EXPECT_THROW(parse_surface("u^-1"), ParseError);
    EXPECT_THROW(parse_surface("(u+v"), ParseError);
    EXPECT_THROW(parse_surface("u v"), ParseError);
    EXPECT_THROW(parse_surface("w"), ParseError);
}

TEST(Parse, Precedence) {
    const Surface f = parse_surface("2+3*u^2-v");
    EXPECT_DOUBLE_EQ(f.eval(2, 1), 2 + 3 * 4 - 1);
    const Surface g = parse_surface("(u+v)^2");
    EXPECT_DOUBLE_EQ(g.eval(1, 2), 9);
    EXPECT_DOUBLE_EQ(g.mixed_partial(1, 2), 2);
}

TEST(Parse, PowerProductDerivative) {
    const Surface f = parse_surface("u^2.5*v^3");
    EXPECT_NEAR(f.mixed_partial(0.7, 1.3), 2.5 * 3 * std::pow(0.7, 1.5) * std::pow(1.3, 2), 1e-14);
}

TEST(Catalog, Lookup) {
    const auto bil = lookup_catalog("bilinear");
    ASSERT_TRUE(bil);
    EXPECT_DOUBLE_EQ(bil->surface.eval(2, 3), 6);
    const auto quartic = lookup_catalog("quartic");
    ASSERT_TRUE(quartic);
    EXPECT_DOUBLE_EQ(quartic->surface.eval(2, 3), 36);
    EXPECT_FALSE(lookup_catalog("missing"));
    const auto k = lookup_catalog("const(2.5)");
    ASSERT_TRUE(k);
    EXPECT_DOUBLE_EQ(k->surface.eval(9, 9), 2.5);
    EXPECT_FALSE(lookup_catalog("const(x)"));
}

TEST(Catalog, Members) {
    std::vector<std::string> names;
    for (const auto& e : catalog()) names.push_back(e.name);
    for (const char* want : {"const", "bilinear", "quartic", "sextic", "square_sum", "pow_2_2", "pow_2.5_3",
                             "pow_3_2.5"})
        EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
    EXPECT_EQ(names.size(), 14u);
}

// Property: polynomial mixed partials agree with the 4-point cross difference.
TEST(MixedPartial, MatchesFiniteDifferenceOnPolynomials) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.1, 3.0);
    for (const auto& e : catalog()) {
        if (e.surface.kind() != SurfaceKind::Polynomial) continue;
        const BivariateFn fn = e.surface.as_function();
        for (int i = 0; i < 100; ++i) {
            const double u = pos(rng), v = pos(rng);
            const double exact = e.surface.mixed_partial(u, v);
            const double fd = central_mixed_difference(fn, u, v, 1e-4, 1e-4);
            EXPECT_LE(std::abs(fd - exact), 1e-5 * std::max(1.0, std::abs(exact))) << e.name << " at " << u << "," << v;
        }
    }
}

TEST(MixedPartial, NumericOnlyUsesCrossDifference) {
    const Surface f = parse_surface("(u+v)^0.5");
    const double u = 1.2, v = 0.7;
    const double exact = -0.25 * std::pow(u + v, -1.5);
    EXPECT_NEAR(f.mixed_partial(u, v), exact, 1e-6);
}

TEST(Surface, ExpressionKind) {
    const Surface f = Surface::expression([](double u, double v) { return std::exp(u * v); },
                                          [](double u, double v) { return std::exp(u * v) * (1 + u * v); }, "exp(uv)");
    EXPECT_EQ(f.kind(), SurfaceKind::Expression);
    EXPECT_DOUBLE_EQ(f.mixed_partial(1, 1), 2 * std::exp(1.0));
    EXPECT_FALSE(f.integral_box(0, 1, 0, 1).has_value());
}

TEST(Surface, ScaledKeepsKind) {
    const Surface f = parse_surface("u^2*v^2").scaled(3.0);
    EXPECT_EQ(f.kind(), SurfaceKind::Polynomial);
    EXPECT_DOUBLE_EQ(f.eval(1, 2), 12.0);
    EXPECT_DOUBLE_EQ(f.mixed_partial(1, 2), 24.0);
}

TEST(Surface, ClosedFormIntegrals) {
    const Surface f = parse_surface("u^2.5*v^2");
    EXPECT_NEAR(*f.integral_box(0, 1, 0, 2), (1 / 3.5) * (8.0 / 3.0), 1e-15);
    EXPECT_NEAR(*f.integral_v_at(2.0, 0, 1), std::pow(2.0, 2.5) / 3.0, 1e-14);
}

// ---- certifier ----

TEST(Certify, PowerFunctionHasNoCounterexample) {
    const double s = 0.5;
    const auto rep = certify_s_convex_second_sense([s](double t) { return std::pow(t, s); }, SExponent(s), 0.0, 1.0);
    EXPECT_EQ(rep.verdict, CertificationVerdict::NoCounterexampleFound);
    EXPECT_EQ(rep.samples_used, SamplerConfig{}.samples);
}

TEST(Certify, NonnegativeConstantsPass) {
    for (double s : {0.1, 0.5, 1.0}) {
        const auto rep = certify_s_convex_second_sense([](double) { return 2.0; }, SExponent(s), 0.0, 3.0);
        EXPECT_EQ(rep.verdict, CertificationVerdict::NoCounterexampleFound);
    }
}

// Oracle: a brute-force grid search over lambda in {0.1..0.9} and a 10-point
// grid finds only sign problems for -t, never an inequality violation.
TEST(Certify, NegativeLinearGivesNegativeValueWitness) {
    auto g = [](double t) { return -t; };
    bool grid_violation = false;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            for (int k = 1; k <= 9; ++k) {
                const double x1 = i / 9.0, x2 = j / 9.0, l = k / 10.0;
                if (g(l * x1 + (1 - l) * x2) > l * g(x1) + (1 - l) * g(x2) + 1e-9) grid_violation = true;
            }
    EXPECT_FALSE(grid_violation);

    const auto rep = certify_s_convex_second_sense(g, SExponent(1.0), 0.0, 1.0);
    ASSERT_EQ(rep.verdict, CertificationVerdict::Counterexample);
    ASSERT_TRUE(rep.witness);
    EXPECT_EQ(rep.witness->kind, WitnessKind::NegativeValue);
    EXPECT_TRUE(replay_witness(g, SExponent(1.0), *rep.witness, 1e-9));
}

TEST(Certify, ConcaveViolationFound) {
    auto g = [](double t) { return 1.0 - (t - 0.5) * (t - 0.5); };  // nonnegative, concave
    const auto rep = certify_s_convex_second_sense(g, SExponent(1.0), 0.0, 1.0);
    ASSERT_EQ(rep.verdict, CertificationVerdict::Counterexample);
    EXPECT_EQ(rep.witness->kind, WitnessKind::InequalityViolation);
    EXPECT_GT(rep.witness->slack, 1e-9);
    EXPECT_TRUE(replay_witness(g, SExponent(1.0), *rep.witness, 1e-9));
}

TEST(Certify, Deterministic) {
    auto g = [](double t) { return std::sin(3 * t) + 1.0; };
    SamplerConfig cfg;
    cfg.seed = 99;
    const auto r1 = certify_s_convex_second_sense(g, SExponent(0.5), 0.0, 2.0, cfg);
    const auto r2 = certify_s_convex_second_sense(g, SExponent(0.5), 0.0, 2.0, cfg);
    ASSERT_EQ(r1.verdict, CertificationVerdict::Counterexample);
    EXPECT_EQ(r1.samples_used, r2.samples_used);
    EXPECT_EQ(r1.witness->x1, r2.witness->x1);
    EXPECT_EQ(r1.witness->x2, r2.witness->x2);
    EXPECT_EQ(r1.witness->lambda, r2.witness->lambda);
    EXPECT_EQ(r1.witness->slack, r2.witness->slack);
}

TEST(CertifyCoordinated, Examples) {
    const Rect unit(0, 1, 0, 1);
    EXPECT_EQ(certify_coordinated(abs_mixed_power(parse_surface("u*v")), unit, SExponent(0.5)).verdict,
              CertificationVerdict::NoCounterexampleFound);
    EXPECT_EQ(certify_coordinated([](double u, double v) { return 4 * u * v; }, unit, SExponent(0.5)).verdict,
              CertificationVerdict::NoCounterexampleFound);
    const BivariateFn neg = [](double u, double v) { return -u * v; };
    const auto rep = certify_coordinated(neg, unit, SExponent(1.0));
    ASSERT_EQ(rep.verdict, CertificationVerdict::Counterexample);
    EXPECT_NE(rep.witness->axis, SectionAxis::None);
    EXPECT_TRUE(replay_witness(neg, SExponent(1.0), *rep.witness, 1e-9));
}

TEST(CertifyCoordinated, NeedsNonnegativeQuadrant) {
    EXPECT_THROW(certify_coordinated(parse_surface("u*v"), Rect(-1, 1, 0, 1), SExponent(1.0)), DomainError);
}

TEST(CertifyCoordinated, CatalogFlagsHold) {
    const Rect r(0, 2, 0, 3);
    for (const auto& e : catalog()) {
        if (!e.abs_mixed_coordinated_s_convex) continue;
        for (double s : {0.25, 0.5, 0.75, 1.0}) {
            const auto rep = certify_coordinated(abs_mixed_power(e.surface), r, SExponent(s));
            EXPECT_EQ(rep.verdict, CertificationVerdict::NoCounterexampleFound) << e.name << " s=" << s;
        }
    }
}
