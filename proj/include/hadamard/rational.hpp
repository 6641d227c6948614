#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "hadamard/domain.hpp"

namespace hadamard {

// Arbitrary-precision rational used by the exact oracles.
using Rational = boost::multiprecision::cpp_rational;

// Every finite double is a dyadic rational; this conversion is exact.
Rational exact_rational(double value);

// Parses "3", "-2.5", "1e-3", "7/3".
Rational parse_rational(const std::string& text);

double to_double(const Rational& value);

struct RationalPoint {
    Rational x;
    Rational y;
};

class RationalRect {
public:
    RationalRect(Rational a, Rational b, Rational c, Rational d);

    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    const Rational& c() const noexcept { return c_; }
    const Rational& d() const noexcept { return d_; }
    Rational area() const { return (b_ - a_) * (d_ - c_); }

    bool contains(const RationalPoint& pt) const {
        return a_ <= pt.x && pt.x <= b_ && c_ <= pt.y && pt.y <= d_;
    }

    // Rounded to the nearest doubles.
    Rect to_rect() const;
    static RationalRect from_rect(const Rect& rect);

private:
    Rational a_, b_, c_, d_;
};

}  // namespace hadamard
