#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hadamard/surface.hpp"

namespace hadamard {

struct CatalogEntry {
    std::string name;
    std::string expression;
    Surface surface;
    // |d^2 f / du dv| is co-ordinated s-convex (second sense) on rectangles in
    // [0, inf)^2 for every s in (0, 1].
    bool abs_mixed_coordinated_s_convex;
};

// const, bilinear, quartic, sextic, square_sum and pow_<alpha>_<beta> for
// alpha, beta in {2, 2.5, 3}.
const std::vector<CatalogEntry>& catalog();

// Also accepts "const(k)" for an arbitrary constant k.
std::optional<CatalogEntry> lookup_catalog(std::string_view name);

Surface constant_surface(double k);

}  // namespace hadamard
