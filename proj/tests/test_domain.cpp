#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hadamard/domain.hpp"
#include "hadamard/errors.hpp"
#include "hadamard/rational.hpp"

using namespace hadamard;

TEST(Rect, UnitSquare) {
    const Rect r = make_rect(0, 1, 0, 1);
    EXPECT_DOUBLE_EQ(r.area(), 1.0);
}

TEST(Rect, Area) { EXPECT_DOUBLE_EQ(make_rect(0, 2, 0, 1).area(), 2.0); }

TEST(Rect, DegenerateRejected) {
    EXPECT_THROW(make_rect(1, 1, 0, 1), DegenerateRect);
    EXPECT_THROW(make_rect(0, 1, 2, 1), DegenerateRect);
    EXPECT_THROW(make_rect(0, std::nan(""), 0, 1), DegenerateRect);
}

TEST(Rect, RequireInside) {
    const Rect r(0, 2, 0, 1);
    EXPECT_NO_THROW(require_inside(r, {0, 0}));
    EXPECT_NO_THROW(require_inside(r, {2, 1}));
    EXPECT_THROW(require_inside(r, {2.5, 0.5}), DomainError);
}

TEST(HolderPair, SelfConjugate) {
    const HolderPair hp = make_holder_pair(2.0);
    EXPECT_DOUBLE_EQ(hp.p(), 2.0);
}

TEST(HolderPair, ThreeGivesThreeHalves) { EXPECT_DOUBLE_EQ(make_holder_pair(3.0).p(), 1.5); }

TEST(HolderPair, BoundaryExcluded) {
    EXPECT_THROW(make_holder_pair(1.0), BadExponent);
    EXPECT_THROW(make_holder_pair(0.5), BadExponent);
}

TEST(HolderPair, ConjugacyInvariant) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 6.0);
    for (int i = 0; i < 1000; ++i) {
        const double q = 1.0 + std::exp(dist(rng) - 3.0);
        const HolderPair hp = make_holder_pair(q);
        EXPECT_GT(hp.p(), 1.0);
        EXPECT_LE(std::abs(1.0 / hp.p() + 1.0 / hp.q() - 1.0), 1e-12) << "q=" << q;
    }
}

TEST(SExponent, Range) {
    EXPECT_NO_THROW(SExponent(1.0));
    EXPECT_NO_THROW(SExponent(1e-6));
    EXPECT_THROW(SExponent(0.0), BadExponent);
    EXPECT_THROW(SExponent(1.5), BadExponent);
}

TEST(PowerMeanQ, Range) {
    EXPECT_NO_THROW(PowerMeanQ(1.0));
    EXPECT_THROW(PowerMeanQ(0.99), BadExponent);
}

TEST(NormalizationMode, RoundTrip) {
    for (auto m : {NormalizationMode::Verbatim, NormalizationMode::Corrected})
        EXPECT_EQ(parse_normalization_mode(to_string(m)), m);
    EXPECT_THROW(parse_normalization_mode("sideways"), std::invalid_argument);
}

TEST(Corners, EnumerationOrder) {
    const Rect r(1, 2, 3, 5);
    const auto pts = corner_points(r);
    EXPECT_EQ(pts[0], (EvalPoint{1, 3}));
    EXPECT_EQ(pts[1], (EvalPoint{1, 5}));
    EXPECT_EQ(pts[2], (EvalPoint{2, 3}));
    EXPECT_EQ(pts[3], (EvalPoint{2, 5}));
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(corner_point(r, kCorners[i]), pts[i]);
        EXPECT_EQ(parse_corner(to_string(kCorners[i])), kCorners[i]);
        EXPECT_EQ(opposite(opposite(kCorners[i])), kCorners[i]);
    }
    EXPECT_EQ(opposite(Corner::AC), Corner::BD);
    EXPECT_EQ(opposite(Corner::AD), Corner::BC);
}

TEST(Rational, ExactFromDouble) {
    EXPECT_EQ(exact_rational(0.5), Rational(1, 2));
    EXPECT_EQ(exact_rational(-3.0), Rational(-3));
    EXPECT_EQ(exact_rational(0.1), Rational(3602879701896397, 36028797018963968));
}

TEST(Rational, Parse) {
    EXPECT_EQ(parse_rational("7/3"), Rational(7, 3));
    EXPECT_EQ(parse_rational("-2.5"), Rational(-5, 2));
    EXPECT_EQ(parse_rational("1e-3"), Rational(1, 1000));
    EXPECT_EQ(parse_rational("12"), Rational(12));
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

TEST(RationalRect, Validation) {
    EXPECT_THROW(RationalRect(1, 1, 0, 1), DegenerateRect);
    const RationalRect r(0, Rational(5, 2), Rational(1), 3);
    EXPECT_EQ(r.area(), Rational(5));
    EXPECT_DOUBLE_EQ(r.to_rect().b(), 2.5);
}
