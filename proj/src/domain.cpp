#include "hadamard/domain.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "hadamard/errors.hpp"

namespace hadamard {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
    : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

namespace {

std::string format_tolerance_message(double best, double err) {
    std::ostringstream os;
    os.precision(17);
    os << "quadrature tolerance not met: best value " << best << ", error estimate " << err;
    return os.str();
}

}  // namespace

ToleranceNotMet::ToleranceNotMet(double best_value, double err_estimate)
    : std::runtime_error(format_tolerance_message(best_value, err_estimate)),
      best_value_(best_value),
      err_estimate_(err_estimate) {}

Rect::Rect(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d)) {
        throw DegenerateRect("rectangle coordinates must be finite");
    }
    if (!(a < b)) {
        throw DegenerateRect("rectangle needs a < b");
    }
    if (!(c < d)) {
        throw DegenerateRect("rectangle needs c < d");
    }
}

Rect make_rect(double a, double b, double c, double d) { return Rect(a, b, c, d); }

void require_inside(const Rect& rect, const EvalPoint& pt) {
    if (!rect.contains(pt.x, pt.y)) {
        std::ostringstream os;
        os.precision(17);
        os << "point (" << pt.x << ", " << pt.y << ") lies outside [" << rect.a() << ", " << rect.b() << "] x ["
           << rect.c() << ", " << rect.d() << "]";
        throw DomainError(os.str());
    }
}

EvalPoint midpoint(const Rect& rect) noexcept {
    return {(rect.a() + rect.b()) / 2.0, (rect.c() + rect.d()) / 2.0};
}

SExponent::SExponent(double s) : s_(s) {
    if (!(s > 0.0 && s <= 1.0)) {
        throw BadExponent("s must lie in (0, 1]");
    }
}

HolderPair make_holder_pair(double q) {
    if (!(q > 1.0) || !std::isfinite(q)) {
        throw BadExponent("Hölder exponent q must be finite and > 1");
    }
    return HolderPair(q / (q - 1.0), q);
}

PowerMeanQ::PowerMeanQ(double q) : q_(q) {
    if (!(q >= 1.0) || !std::isfinite(q)) {
        throw BadExponent("power-mean exponent q must be finite and >= 1");
    }
}

std::string_view to_string(NormalizationMode mode) noexcept {
    return mode == NormalizationMode::Verbatim ? "verbatim" : "corrected";
}

NormalizationMode parse_normalization_mode(std::string_view text) {
    if (text == "verbatim") return NormalizationMode::Verbatim;
    if (text == "corrected") return NormalizationMode::Corrected;
    throw std::invalid_argument("unknown normalization mode '" + std::string(text) + "'");
}

std::string_view to_string(Corner corner) noexcept {
    switch (corner) {
        case Corner::AC: return "ac";
        case Corner::AD: return "ad";
        case Corner::BC: return "bc";
        case Corner::BD: return "bd";
    }
    return "?";
}

Corner parse_corner(std::string_view text) {
    for (Corner c : kCorners) {
        if (text == to_string(c)) return c;
    }
    throw std::invalid_argument("unknown corner '" + std::string(text) + "'");
}

EvalPoint corner_point(const Rect& rect, Corner corner) noexcept {
    switch (corner) {
        case Corner::AC: return {rect.a(), rect.c()};
        case Corner::AD: return {rect.a(), rect.d()};
        case Corner::BC: return {rect.b(), rect.c()};
        case Corner::BD: return {rect.b(), rect.d()};
    }
    return {};
}

std::array<EvalPoint, 4> corner_points(const Rect& rect) noexcept {
    return {corner_point(rect, Corner::AC), corner_point(rect, Corner::AD), corner_point(rect, Corner::BC),
            corner_point(rect, Corner::BD)};
}

Corner opposite(Corner corner) noexcept {
    switch (corner) {
        case Corner::AC: return Corner::BD;
        case Corner::AD: return Corner::BC;
        case Corner::BC: return Corner::AD;
        case Corner::BD: return Corner::AC;
    }
    return corner;
}

}  // namespace hadamard
