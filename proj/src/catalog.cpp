#include "hadamard/catalog.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace hadamard {

namespace {

std::string format_exponent(double e) {
    std::ostringstream os;
    os << e;
    return os.str();
}

std::vector<CatalogEntry> build_catalog() {
    std::vector<CatalogEntry> out;
    auto add = [&](std::string name, std::string expr) {
        Surface s = parse_surface(expr);
        out.push_back({std::move(name), std::move(expr), std::move(s), true});
    };
    add("const", "1");
    add("bilinear", "u*v");
    add("quartic", "u^2*v^2");
    add("sextic", "u^3*v^3");
    add("square_sum", "(u+v)^2");
    constexpr std::array<double, 3> exponents{2.0, 2.5, 3.0};
    for (double alpha : exponents) {
        for (double beta : exponents) {
            const std::string a = format_exponent(alpha), b = format_exponent(beta);
            add("pow_" + a + "_" + b, "u^" + a + "*v^" + b);
        }
    }
    return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

Surface constant_surface(double k) {
    return Surface::polynomial(Poly2<Rational>::constant(exact_rational(k)), "const(" + format_exponent(k) + ")");
}

std::optional<CatalogEntry> lookup_catalog(std::string_view name) {
    for (const auto& e : catalog()) {
        if (e.name == name) return e;
    }
    if (name.size() > 7 && name.substr(0, 6) == "const(" && name.back() == ')') {
        const std::string inner(name.substr(6, name.size() - 7));
        try {
            std::size_t used = 0;
            const double k = std::stod(inner, &used);
            if (used != inner.size() || !std::isfinite(k)) return std::nullopt;
            // |D| = 0 for every constant.
            return CatalogEntry{std::string(name), inner, constant_surface(k), true};
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace hadamard
