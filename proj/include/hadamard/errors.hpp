#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hadamard {

// Rectangle with a >= b or c >= d.
class DegenerateRect : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// s outside (0,1], q <= 1 for a Hölder pair, q < 1 for a power mean.
class BadExponent : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A point outside the rectangle it is paired with, or a certifier asked to
// work outside [0, inf)^2.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A surface produced NaN or an infinity.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

// Adaptive quadrature ran out of subdivisions. Carries the best value found.
class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(double best_value, double err_estimate);

    double best_value() const noexcept { return best_value_; }
    double err_estimate() const noexcept { return err_estimate_; }

private:
    double best_value_;
    double err_estimate_;
};

}  // namespace hadamard
