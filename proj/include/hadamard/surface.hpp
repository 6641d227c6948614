#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hadamard/domain.hpp"
#include "hadamard/poly2.hpp"
#include "hadamard/rational.hpp"

namespace hadamard {

enum class SurfaceKind {
    Polynomial,    // exact rational coefficient grid, degree <= 8 per variable
    PowerProduct,  // finite sum of c * u^alpha * v^beta with real alpha, beta >= 0
    Expression,    // callable with a caller-supplied analytic mixed partial
    NumericOnly,   // callable; mixed partial by central cross-differences
};

std::string_view to_string(SurfaceKind kind) noexcept;

struct PowerTerm {
    double coeff = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

using BivariateFn = std::function<double(double, double)>;
using UnivariateFn = std::function<double(double)>;

// An immutable, shareable bivariate function f(u, v) together with access to
// its mixed partial d^2 f / du dv.
class Surface {
public:
    static Surface polynomial(Poly2<Rational> coeffs, std::string label = {});
    static Surface power_sum(std::vector<PowerTerm> terms, std::string label = {});
    static Surface expression(BivariateFn f, BivariateFn mixed, std::string label = {});
    static Surface numeric(BivariateFn f, std::string label = {});

    SurfaceKind kind() const noexcept;
    const std::string& label() const noexcept;

    // Throws EvalError when the value is NaN or infinite.
    double eval(double u, double v) const;
    double mixed_partial(double u, double v) const;
    double operator()(double u, double v) const { return eval(u, v); }

    // Exact rational coefficients when kind() == Polynomial.
    const Poly2<Rational>* exact_polynomial() const noexcept;
    // Power-product terms when kind() is Polynomial or PowerProduct.
    std::vector<PowerTerm> power_terms() const;

    // Closed-form integrals, available for Polynomial and PowerProduct kinds.
    bool has_closed_form_integrals() const noexcept;
    std::optional<double> integral_box(double ulo, double uhi, double vlo, double vhi) const;
    std::optional<double> integral_v_at(double u, double vlo, double vhi) const;
    std::optional<double> integral_u_at(double v, double ulo, double uhi) const;

    // alpha * f, keeping the representation kind.
    Surface scaled(double alpha) const;

    // The mixed partial as a surface of its own (exact where f is exact).
    Surface mixed_partial_surface() const;

    BivariateFn as_function() const;

private:
    struct Impl;
    explicit Surface(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

double eval(const Surface& f, double u, double v);
double mixed_partial(const Surface& f, double u, double v);

// Symmetric four-point cross difference
// [f(u+h,v+k) - f(u+h,v-k) - f(u-h,v+k) + f(u-h,v-k)] / (4hk).
double central_mixed_difference(const BivariateFn& f, double u, double v, double hu, double hv);

// Step used by NumericOnly surfaces: max(1e-4, 1e-4 |coordinate|).
double finite_difference_step(double coordinate) noexcept;

// Grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := number | 'u' | 'v' | factor '^' number | '(' expr ')'
// Exponents must be positive. Integer-exponent polynomials of degree <= 8
// per variable become Polynomial surfaces, sums of monomials with real
// exponents become PowerProduct surfaces, anything else is NumericOnly.
Surface parse_surface(std::string_view text);

}  // namespace hadamard
