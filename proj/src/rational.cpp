#include "hadamard/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "hadamard/errors.hpp"

namespace hadamard {

using boost::multiprecision::cpp_int;

Rational exact_rational(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("cannot convert a non-finite double to a rational");
    }
    if (value == 0.0) return Rational(0);
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    // mantissa * 2^53 is an integer for every double.
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    cpp_int numerator(scaled);
    cpp_int denominator(1);
    if (exponent >= 0) {
        numerator <<= exponent;
    } else {
        denominator <<= -exponent;
    }
    return Rational(numerator, denominator);
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const Rational num = parse_rational(text.substr(0, slash));
        const Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return num / den;
    }
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    cpp_int digits = 0;
    cpp_int scale = 1;
    bool any_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits = digits * 10 + (text[i] - '0');
        any_digit = true;
        ++i;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            digits = digits * 10 + (text[i] - '0');
            scale *= 10;
            any_digit = true;
            ++i;
        }
    }
    if (!any_digit) throw std::invalid_argument("not a number: '" + text + "'");
    Rational value(digits, scale);
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            exp_negative = text[i] == '-';
            ++i;
        }
        long exp = 0;
        bool any_exp = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            exp = exp * 10 + (text[i] - '0');
            if (exp > 4000) throw std::invalid_argument("exponent too large in '" + text + "'");
            any_exp = true;
            ++i;
        }
        if (!any_exp) throw std::invalid_argument("missing exponent digits in '" + text + "'");
        cpp_int power = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(exp));
        value = exp_negative ? value / Rational(power) : value * Rational(power);
    }
    if (i != text.size()) throw std::invalid_argument("trailing characters in '" + text + "'");
    return negative ? Rational(-value) : value;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

RationalRect::RationalRect(Rational a, Rational b, Rational c, Rational d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (!(a_ < b_) || !(c_ < d_)) {
        throw DegenerateRect("rational rectangle needs a < b and c < d");
    }
}

Rect RationalRect::to_rect() const { return Rect(to_double(a_), to_double(b_), to_double(c_), to_double(d_)); }

RationalRect RationalRect::from_rect(const Rect& rect) {
    return RationalRect(exact_rational(rect.a()), exact_rational(rect.b()), exact_rational(rect.c()),
                        exact_rational(rect.d()));
}

}  // namespace hadamard
