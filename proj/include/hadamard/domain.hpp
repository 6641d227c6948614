#pragma once

#include <array>
#include <string_view>

namespace hadamard {

// Axis-aligned rectangle [a,b] x [c,d] with a < b and c < d.
class Rect {
public:
    Rect(double a, double b, double c, double d);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }

    double width() const noexcept { return b_ - a_; }
    double height() const noexcept { return d_ - c_; }
    double area() const noexcept { return (b_ - a_) * (d_ - c_); }

    bool contains(double x, double y) const noexcept {
        return a_ <= x && x <= b_ && c_ <= y && y <= d_;
    }
    bool in_nonnegative_quadrant() const noexcept { return a_ >= 0.0 && c_ >= 0.0; }

    friend bool operator==(const Rect&, const Rect&) = default;

private:
    double a_, b_, c_, d_;
};

Rect make_rect(double a, double b, double c, double d);

struct EvalPoint {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

// Throws DomainError when pt lies outside rect.
void require_inside(const Rect& rect, const EvalPoint& pt);

EvalPoint midpoint(const Rect& rect) noexcept;

// 0 < s <= 1.
class SExponent {
public:
    explicit SExponent(double s);
    double value() const noexcept { return s_; }

private:
    double s_;
};

// Conjugate exponents, 1/p + 1/q = 1 with p, q > 1.
class HolderPair {
public:
    double p() const noexcept { return p_; }
    double q() const noexcept { return q_; }

private:
    HolderPair(double p, double q) : p_(p), q_(q) {}
    friend HolderPair make_holder_pair(double q);

    double p_, q_;
};

HolderPair make_holder_pair(double q);

// Power-mean exponent, q >= 1.
class PowerMeanQ {
public:
    explicit PowerMeanQ(double q);
    double value() const noexcept { return q_; }

private:
    double q_;
};

// How the corner-weighted term A of the boundary identity is normalized.
// Verbatim divides the corner sum by the area as printed in the source
// display; Corrected leaves it undivided, which is what the identity needs.
enum class NormalizationMode { Verbatim, Corrected };

std::string_view to_string(NormalizationMode mode) noexcept;
NormalizationMode parse_normalization_mode(std::string_view text);

// Corners of the rectangle. The enumeration order (a,c), (a,d), (b,c), (b,d)
// is used for every report, sum and table in the project.
enum class Corner { AC, AD, BC, BD };

inline constexpr std::array<Corner, 4> kCorners{Corner::AC, Corner::AD, Corner::BC, Corner::BD};

std::string_view to_string(Corner corner) noexcept;
Corner parse_corner(std::string_view text);

EvalPoint corner_point(const Rect& rect, Corner corner) noexcept;
std::array<EvalPoint, 4> corner_points(const Rect& rect) noexcept;

// The diagonally opposite corner.
Corner opposite(Corner corner) noexcept;

}  // namespace hadamard
