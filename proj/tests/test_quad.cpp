#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "hadamard/errors.hpp"
#include "hadamard/quad.hpp"

using namespace hadamard;

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
    for (int n : {2, 3, 8, 16, 32, 64}) {
        const GaussRule& r = gauss_legendre(n);
        ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double sum = 0.0;
            for (int i = 0; i < n; ++i) sum += r.weights[i] * std::pow(r.nodes[i], k);
            const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
            EXPECT_NEAR(sum, exact, 1e-14) << "n=" << n << " k=" << k;
        }
        for (int i = 1; i < n; ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
    }
}

TEST(GaussLegendre, CachedAndThreadSafe) {
    std::vector<const GaussRule*> seen(8, nullptr);
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) threads.emplace_back([&seen, t] { seen[t] = &gauss_legendre(41); });
    for (auto& th : threads) th.join();
    for (auto* p : seen) EXPECT_EQ(p, seen[0]);
}

TEST(Integrate1d, Examples) {
    EXPECT_NEAR(integrate_1d([](double t) { return t; }, 0, 1).value, 0.5, 1e-15);
    EXPECT_NEAR(integrate_1d([](double t) { return (1 - t) * t; }, 0, 1).value, 1.0 / 6.0, 1e-15);
    QuadConfig cfg;
    cfg.max_subdiv = 60;
    cfg.abs_tol = 1e-14;
    EXPECT_NEAR(integrate_1d([](double t) { return (1 - t) * std::sqrt(t); }, 0, 1, cfg).value, 4.0 / 15.0, 1e-12);
}

TEST(Integrate1d, BadInterval) { EXPECT_THROW(integrate_1d([](double) { return 1.0; }, 1, 1), DomainError); }

TEST(Integrate1d, ToleranceNotMetCarriesBestValue) {
    QuadConfig cfg;
    cfg.max_subdiv = 2;
    cfg.abs_tol = 1e-15;
    try {
        integrate_1d([](double t) { return std::pow(t, 0.1); }, 0, 1, cfg);
        FAIL() << "expected ToleranceNotMet";
    } catch (const ToleranceNotMet& e) {
        EXPECT_NEAR(e.best_value(), 1.0 / 1.1, 1e-4);
        EXPECT_GT(e.err_estimate(), 1e-15);
    }
}

TEST(Integrate1d, SubdivisionsBounded) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> exps(0.05, 3.0);
    for (int i = 0; i < 50; ++i) {
        const double e = exps(rng);
        QuadConfig cfg;
        cfg.max_subdiv = 1 + i % 12;
        try {
            const auto r = integrate_1d([e](double t) { return std::pow(t, e); }, 0, 1, cfg);
            EXPECT_LE(r.subdivisions, cfg.max_subdiv);
        } catch (const ToleranceNotMet&) {
        }
    }
}

TEST(Integrate2d, Examples) {
    EXPECT_NEAR(integrate_2d([](double u, double v) { return u * v; }, Rect(0, 1, 0, 1)).value, 0.25, 1e-15);
    EXPECT_NEAR(integrate_2d([](double u, double v) { return u * v; }, Rect(0, 2, 0, 1)).value, 1.0, 1e-15);
    const Rect r(-1, 2.5, 0.25, 3);
    EXPECT_NEAR(integrate_2d([](double, double) { return 1.0; }, r).value, r.area(), 1e-14);
}

TEST(Integrate2d, AdaptiveOnKink) {
    QuadConfig cfg;
    cfg.max_subdiv = 400;
    cfg.abs_tol = 1e-9;
    const auto r = integrate_2d([](double u, double v) { return std::abs(u - 0.3) * v; }, Rect(0, 1, 0, 1), cfg);
    EXPECT_NEAR(r.value, 0.5 * (0.09 / 2 + 0.49 / 2), 1e-9);
    EXPECT_GT(r.subdivisions, 0);
    EXPECT_LE(r.subdivisions, cfg.max_subdiv);
}

TEST(TensorKernel, ParallelMatchesSerialBitwise) {
    const GaussRule& rule = gauss_legendre(48);
    auto f = [](double u, double v) { return std::sin(u * v) + std::exp(-u) * v * v; };
    for (int k = 0; k < 5; ++k) {
        const double lo = 0.1 * k, hi = 1.0 + k;
        EXPECT_EQ(tensor_gl_2d(f, lo, hi, -hi, lo, rule), tensor_gl_2d_serial(f, lo, hi, -hi, lo, rule));
    }
}

TEST(PolyExact, Examples) {
    const auto uv = Poly2<Rational>::monomial(1, 1, Rational(1));
    EXPECT_EQ(poly_integral_exact(uv, RationalRect(0, 1, 0, 1)), Rational(1, 4));
    EXPECT_EQ(poly_integral_exact(Poly2<Rational>::monomial(2, 2, Rational(1)), RationalRect(0, 1, 0, 1)),
              Rational(1, 9));
    EXPECT_EQ(poly_integral_exact(uv, RationalRect(0, 2, 0, 1)), Rational(1));
    const auto res = poly_integral_result(uv, RationalRect(0, 2, 0, 1));
    EXPECT_TRUE(res.exact);
    EXPECT_EQ(res.err_estimate, 0.0);
}

TEST(KernelMoment, Examples) {
    EXPECT_DOUBLE_EQ(kernel_moment(SExponent(1.0)), 1.0 / 6.0);
    EXPECT_NEAR(kernel_moment(SExponent(0.5)), 4.0 / 15.0, 1e-16);
}

TEST(KernelMoment, QuadratureAgrees) {
    QuadConfig cfg;
    cfg.max_subdiv = 60;
    cfg.abs_tol = 1e-14;
    for (int i = 1; i <= 10; ++i) {
        const double s = 0.1 * i;
        const double q = integrate_1d([s](double t) { return (1 - t) * std::pow(t, s); }, 0, 1, cfg).value;
        EXPECT_LE(std::abs(q - kernel_moment(SExponent(s))), 1e-12) << "s=" << s;
    }
}

TEST(KernelMoment, ClosedFormInvariant) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(1e-6, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double s = dist(rng);
        EXPECT_NEAR(kernel_moment(SExponent(s)) * (s + 1) * (s + 2), 1.0, 1e-14);
    }
}

TEST(HolderKernel, Examples) {
    EXPECT_NEAR(holder_kernel_constant(2.0), 1.0 / 3.0, 1e-16);
    EXPECT_NEAR(holder_kernel_constant(1.0), 0.25, 1e-16);
    EXPECT_THROW(holder_kernel_constant(0.5), BadExponent);
}

TEST(HolderKernel, QuadratureAgrees) {
    QuadConfig cfg;
    cfg.max_subdiv = 60;
    cfg.abs_tol = 1e-14;
    for (double p : {1.5, 2.0, 3.0, 4.0}) {
        const double integral =
            integrate_2d([p](double t, double l) { return std::pow((1 - t) * (1 - l), p); }, Rect(0, 1, 0, 1), cfg)
                .value;
        EXPECT_LE(std::abs(integral - 1.0 / ((p + 1) * (p + 1))), 1e-8) << p;
        EXPECT_LE(std::abs(std::pow(integral, 1 / p) - holder_kernel_constant(p)), 1e-8) << p;
    }
}

TEST(PowerMeanPrefactor, Examples) {
    EXPECT_DOUBLE_EQ(power_mean_prefactor(PowerMeanQ(1), T3ConstantMode::Verbatim), 1.0);
    EXPECT_DOUBLE_EQ(power_mean_prefactor(PowerMeanQ(1), T3ConstantMode::Sharpened), 1.0);
    EXPECT_DOUBLE_EQ(power_mean_prefactor(PowerMeanQ(2), T3ConstantMode::Verbatim), 2.0);
    EXPECT_DOUBLE_EQ(power_mean_prefactor(PowerMeanQ(2), T3ConstantMode::Sharpened), 0.5);
    for (double q = 1.0; q < 20; q += 0.37)
        EXPECT_GE(power_mean_prefactor(PowerMeanQ(q), T3ConstantMode::Verbatim),
                  power_mean_prefactor(PowerMeanQ(q), T3ConstantMode::Sharpened));
}

TEST(QuadConfig, Validation) {
    QuadConfig cfg;
    cfg.gl_order = 1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.gl_order = 4;
    cfg.abs_tol = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}
