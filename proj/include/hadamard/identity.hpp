#pragma once

#include <array>
#include <string_view>

#include "hadamard/domain.hpp"
#include "hadamard/quad.hpp"
#include "hadamard/rational.hpp"
#include "hadamard/surface.hpp"

namespace hadamard {

// How the integrals in the boundary identity are computed.
//   Auto:       closed forms when the surface has them, quadrature otherwise
//   Quadrature: adaptive Gauss-Legendre for every integral
//   Exact:      rational arithmetic; Polynomial surfaces only
enum class IntegrationPath { Auto, Quadrature, Exact };

std::string_view to_string(IntegrationPath path) noexcept;

// Quadrants of the right-hand side, in summation order. Each is named by the
// corner its kernel is anchored at.
inline constexpr std::array<Corner, 4> kQuadrantOrder = kCorners;

struct LemmaEvaluation {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // |lhs - rhs|
    NormalizationMode mode = NormalizationMode::Corrected;
    double a_term = 0.0;
    std::array<double, 4> quadrant_terms{};  // ac, ad, bc, bd
    IntegrationPath path = IntegrationPath::Auto;
};

struct ExactLemmaEvaluation {
    Rational lhs;
    Rational rhs;
    Rational residual;
    NormalizationMode mode = NormalizationMode::Corrected;
    Rational a_term;
    std::array<Rational, 4> quadrant_terms;
};

// Edge and area integrals of f over the rectangle.
struct BoundaryIntegrals {
    double along_a = 0.0;  // int_c^d f(a, v) dv
    double along_b = 0.0;  // int_c^d f(b, v) dv
    double along_c = 0.0;  // int_a^b f(u, c) du
    double along_d = 0.0;  // int_a^b f(u, d) du
    double area_integral = 0.0;
};

BoundaryIntegrals boundary_integrals(const Surface& f, const Rect& rect, const QuadConfig& cfg = {},
                                     IntegrationPath path = IntegrationPath::Auto);

// (x-a)(y-c) f(a,c) + (x-a)(d-y) f(a,d) + (b-x)(y-c) f(b,c) + (b-x)(d-y) f(b,d),
// divided by the area in Verbatim mode.
double corner_term_A(const Surface& f, const Rect& rect, const EvalPoint& pt, NormalizationMode mode);

// (1/area) [A - (x-a) int f(a,.) - (b-x) int f(b,.) - (d-y) int f(.,d) - (y-c) int f(.,c) + int int f]
double lemma_lhs(const Surface& f, const Rect& rect, const EvalPoint& pt, NormalizationMode mode,
                 const QuadConfig& cfg = {}, IntegrationPath path = IntegrationPath::Auto);

// Sum of the four kernel-weighted integrals of the mixed partial over
// (t, l) in [0,1]^2. Quadrants whose coefficient vanishes are skipped.
double lemma_rhs(const Surface& f, const Rect& rect, const EvalPoint& pt, const QuadConfig& cfg = {},
                 IntegrationPath path = IntegrationPath::Auto);

LemmaEvaluation lemma_residual(const Surface& f, const Rect& rect, const EvalPoint& pt, NormalizationMode mode,
                               const QuadConfig& cfg = {}, IntegrationPath path = IntegrationPath::Auto);

// Both sides in rational arithmetic. The right side integrates the kernel
// times the composed mixed partial; the left side uses antiderivatives of f.
ExactLemmaEvaluation lemma_residual_exact(const Poly2<Rational>& f, const RationalRect& rect,
                                          const RationalPoint& pt, NormalizationMode mode);

}  // namespace hadamard
