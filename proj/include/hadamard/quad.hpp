#pragma once

#include <string_view>
#include <vector>

#include "hadamard/domain.hpp"
#include "hadamard/poly2.hpp"
#include "hadamard/rational.hpp"
#include "hadamard/surface.hpp"

namespace hadamard {

struct QuadConfig {
    int gl_order = 32;    // nodes per axis, >= 2
    int max_subdiv = 10;  // maximum bisection depth of any cell
    double abs_tol = 1e-11;

    // Throws std::invalid_argument when gl_order < 2, max_subdiv < 0 or
    // abs_tol <= 0.
    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double err_estimate = 0.0;
    int subdivisions = 0;  // deepest bisection level reached
    bool exact = false;  // only set by the rational oracle, with err_estimate 0
};

// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached per order; safe to call concurrently.
const GaussRule& gauss_legendre(int order);

// Adaptive Gauss-Legendre. The error estimate of a cell is
// |GL(n) - GL(n/2)|; the worst cell is bisected until the summed estimate is
// below abs_tol (or below the rounding floor of the integral). A cell at
// depth max_subdiv is not split further; if the estimate is still too large
// once no cell can be split, ToleranceNotMet is thrown. subdivisions reports
// the deepest level used.
IntegralResult integrate_1d(const UnivariateFn& g, double lo, double hi, const QuadConfig& cfg = {});

// Tensor-product version of integrate_1d with quadrisection of cells.
IntegralResult integrate_2d(const BivariateFn& f, const Rect& rect, const QuadConfig& cfg = {});
IntegralResult integrate_2d(const Surface& f, const Rect& rect, const QuadConfig& cfg = {});

// One tensor-product rule on a box. The parallel kernel splits the outer
// node loop across OpenMP threads and sums the row partials in node order,
// so both kernels return bit-identical values.
double tensor_gl_2d(const BivariateFn& f, double ulo, double uhi, double vlo, double vhi, const GaussRule& rule);
double tensor_gl_2d_serial(const BivariateFn& f, double ulo, double uhi, double vlo, double vhi,
                           const GaussRule& rule);

// Exact integral of p over the rectangle in rational arithmetic.
Rational poly_integral_exact(const Poly2<Rational>& p, const RationalRect& rect);
IntegralResult poly_integral_result(const Poly2<Rational>& p, const RationalRect& rect);

// int_0^1 (1 - t) t^s dt = 1 / ((s + 1)(s + 2)).
double kernel_moment(SExponent s);

// (int_0^1 int_0^1 ((1 - t)(1 - l))^p dl dt)^(1/p) = 1 / (p + 1)^(2/p). p >= 1.
double holder_kernel_constant(double p);

enum class T3ConstantMode {
    Verbatim,  // 2^(2 - 2/q), the printed constant
    Sharpened,      // 2^(2/q - 2) = (1/4)^(1 - 1/q)
};

std::string_view to_string(T3ConstantMode mode) noexcept;
T3ConstantMode parse_t3_constant_mode(std::string_view text);

double power_mean_prefactor(PowerMeanQ q, T3ConstantMode mode);

}  // namespace hadamard
