#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "hadamard/analysis.hpp"
#include "hadamard/catalog.hpp"

using namespace hadamard;

namespace {

const Surface& uv() {
    static const Surface s = parse_surface("u*v");
    return s;
}

bool bit_equal(double x, double y) { return std::memcmp(&x, &y, sizeof x) == 0; }

}  // namespace

TEST(ScanGap, BilinearTightAtCorner) {
    const Rect r(0, 2, 0, 1);
    const GapSurface g = scan_gap({}, uv(), r, SExponent(1), 8);
    EXPECT_EQ(g.grid.size(), 81u);
    EXPECT_NEAR(g.min_margin, 0.0, 1e-12);
    const bool at_corner = (g.argmin.x == r.a() || g.argmin.x == r.b()) && (g.argmin.y == r.c() || g.argmin.y == r.d());
    EXPECT_TRUE(at_corner) << g.argmin.x << "," << g.argmin.y;
    EXPECT_GE(g.min_margin, -1e-10);
}

TEST(ScanGap, ConstantAllZero) {
    const GapSurface g = scan_gap({}, constant_surface(2), Rect(0, 2, 0, 1), SExponent(0.5), 4);
    for (const auto& c : g.grid) EXPECT_EQ(c.margin, 0.0);
    // Ties resolve to the first cell in row-major order.
    EXPECT_EQ(g.argmin.x, 0.0);
    EXPECT_EQ(g.argmin.y, 0.0);
}

TEST(ScanGap, LatticeIncludesMidpoint) {
    const GapSurface g = scan_gap({}, uv(), Rect(0, 1, 0, 1), SExponent(1), 2);
    ASSERT_EQ(g.grid.size(), 9u);
    EXPECT_EQ(g.grid[4].x, 0.5);
    EXPECT_EQ(g.grid[4].y, 0.5);
    EXPECT_EQ(g.grid[1].x, 0.5);
    EXPECT_EQ(g.grid[1].y, 0.0);
    EXPECT_THROW(scan_gap({}, uv(), Rect(0, 1, 0, 1), SExponent(1), 1), std::invalid_argument);
}

TEST(ScanGap, ParallelMatchesSerialBitwise) {
    ScanSpec spec;
    spec.family = BoundFamily::T3;
    spec.q = 2.0;
    spec.t3_constant = T3ConstantMode::Sharpened;
    const Surface f = *&lookup_catalog("pow_2.5_3")->surface;
    const Rect r(0.5, 2.5, 1, 3);
    const GapSurface a = scan_gap(spec, f, r, SExponent(0.5), 12);
    const GapSurface b = scan_gap_serial(spec, f, r, SExponent(0.5), 12);
    const GapSurface c = scan_gap(spec, f, r, SExponent(0.5), 12);
    ASSERT_EQ(a.grid.size(), b.grid.size());
    for (std::size_t i = 0; i < a.grid.size(); ++i) {
        EXPECT_TRUE(bit_equal(a.grid[i].margin, b.grid[i].margin));
        EXPECT_TRUE(bit_equal(a.grid[i].margin, c.grid[i].margin));
        EXPECT_TRUE(bit_equal(a.grid[i].lhs, b.grid[i].lhs));
    }
    EXPECT_TRUE(bit_equal(a.min_margin, b.min_margin));
    EXPECT_EQ(a.argmin, b.argmin);
}

TEST(ScanGap, FailuresAreRecorded) {
    // The supplied mixed partial is infinite on the line u = 1/2.
    const Surface f = Surface::expression([](double u, double v) { return u * v; },
                                          [](double u, double) { return 1.0 / (u - 0.5); });
    const GapSurface g = scan_gap({}, f, Rect(0, 1, 0, 1), SExponent(1), 4);
    EXPECT_EQ(g.failures, 5u);
    for (const auto& c : g.grid) {
        EXPECT_EQ(c.ok, c.x != 0.5);
        if (!c.ok) EXPECT_FALSE(c.error.empty());
    }
    EXPECT_TRUE(std::isfinite(g.min_margin));
}

TEST(ScanGap, CertifiedCatalogNonnegative) {
    for (const auto& e : catalog()) {
        const GapSurface g = scan_gap({}, e.surface, Rect(0, 2, 0, 1), SExponent(0.5), 6);
        EXPECT_EQ(g.failures, 0u) << e.name;
        EXPECT_GE(g.min_margin, -1e-10) << e.name;
    }
}

TEST(Refine, DoesNotIncreaseMargin) {
    const Surface f = parse_surface("u^2*v^2");
    const Rect r(0, 2, 0, 1);
    const GapSurface g = scan_gap({}, f, r, SExponent(1), 4);
    const Refinement ref = refine_argmin(g, f, r);
    EXPECT_EQ(ref.iterations, 20);
    EXPECT_LE(ref.margin, g.min_margin);
    EXPECT_TRUE(r.contains(ref.point.x, ref.point.y));
}

TEST(SweepS, BilinearMidpoint) {
    const std::vector<double> s_values{0.25, 0.5, 0.75, 1.0};
    const SweepTable t = sweep_s({}, uv(), Rect(0, 1, 0, 1), {0.5, 0.5}, s_values);
    ASSERT_EQ(t.rows.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) {
        const double s = s_values[i];
        EXPECT_NEAR(t.rows[i].rhs, 1 / (4 * (s + 1) * (s + 1)), 1e-15);
    }
    EXPECT_EQ(t.rhs_trend, "decreasing");
    const auto direct = t1_report(uv(), Rect(0, 1, 0, 1), {0.5, 0.5}, SExponent(1), NormalizationMode::Corrected);
    EXPECT_TRUE(bit_equal(t.rows[3].rhs, direct.rhs));
    EXPECT_TRUE(bit_equal(t.rows[3].lhs, direct.lhs));
}

TEST(SweepS, Empty) {
    const SweepTable t = sweep_s({}, uv(), Rect(0, 1, 0, 1), {0.5, 0.5}, {});
    EXPECT_TRUE(t.rows.empty());
    EXPECT_EQ(t.rhs_trend, "n/a");
}

TEST(CompareFamilies, BilinearMidpoint) {
    const auto rows = compare_families(uv(), Rect(0, 1, 0, 1), {0.5, 0.5}, SExponent(1), 2.0);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_NEAR(rows[0].rhs, 1.0 / 16, 1e-15);
    EXPECT_NEAR(rows[1].rhs, 1.0 / 12, 1e-15);
    EXPECT_NEAR(rows[2].rhs, 1.0 / 4, 1e-15);
    EXPECT_NEAR(rows[3].rhs, 1.0 / 16, 1e-15);
    for (const auto& r : rows) EXPECT_EQ(r.lhs, rows[0].lhs);
}

TEST(CompareFamilies, Constant) {
    const auto rows = compare_families(constant_surface(4), Rect(0, 2, 0, 1), {0.5, 0.5}, SExponent(0.5), 3.0);
    for (const auto& r : rows) {
        EXPECT_EQ(r.lhs, 0.0);
        EXPECT_EQ(r.rhs, 0.0);
    }
}

TEST(Trend, Labels) {
    EXPECT_EQ(describe_trend({1, 2, 3}), "increasing");
    EXPECT_EQ(describe_trend({1, 1}), "constant");
    EXPECT_EQ(describe_trend({1, 3, 2}), "mixed");
}
