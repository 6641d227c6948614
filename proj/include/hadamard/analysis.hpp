#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hadamard/bounds.hpp"

namespace hadamard {

// What a scan evaluates at every lattice point.
struct ScanSpec {
    BoundFamily family = BoundFamily::T1;
    std::optional<double> q;  // T2: q > 1 (default 2), T3: q >= 1 (default 1)
    T3ConstantMode t3_constant = T3ConstantMode::Verbatim;
    NormalizationMode mode = NormalizationMode::Corrected;
};

struct GapCell {
    double x = 0.0;
    double y = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool ok = true;     // false when evaluation threw; see error
    std::string error;  // message of the evaluation failure
};

struct Refinement {
    EvalPoint start;
    EvalPoint point;
    double margin = 0.0;
    int iterations = 0;
};

struct GapSurface {
    int grid_n = 0;
    // (grid_n + 1)^2 cells, row-major: cell (i, j) at index j * (grid_n + 1) + i
    // holds x = a + i (b-a)/grid_n and y = c + j (d-c)/grid_n.
    std::vector<GapCell> grid;
    double min_margin = 0.0;
    EvalPoint argmin;  // first minimal cell in row-major order
    std::size_t failures = 0;
    ScanSpec spec;
    double s = 1.0;
    std::optional<Refinement> refined;
};

// Evaluates the bound on the lattice. Cells are computed concurrently with
// OpenMP and gathered in row-major order before the reduction.
GapSurface scan_gap(const ScanSpec& spec, const Surface& f, const Rect& rect, SExponent s, int grid_n,
                    const BoundOptions& opts = {});
// Single-threaded reference with identical output.
GapSurface scan_gap_serial(const ScanSpec& spec, const Surface& f, const Rect& rect, SExponent s, int grid_n,
                           const BoundOptions& opts = {});

// Margin of the bound at a single point.
BoundReport evaluate_spec(const ScanSpec& spec, const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s,
                          const BoundOptions& opts = {});

// Coordinate descent on the margin from gap.argmin: 20 iterations, initial
// steps one lattice spacing, halved whenever no move improves.
Refinement refine_argmin(const GapSurface& gap, const Surface& f, const Rect& rect, const BoundOptions& opts = {},
                         int iterations = 20);

struct SweepTable {
    std::vector<BoundReport> rows;
    // Descriptive shape of rhs along the s list: "decreasing", "increasing",
    // "constant", "mixed", or "n/a" for fewer than two rows.
    std::string rhs_trend;
};

SweepTable sweep_s(const ScanSpec& spec, const Surface& f, const Rect& rect, const EvalPoint& pt,
                   const std::vector<double>& s_values, const BoundOptions& opts = {});

// Rows t1, t2(q), t3 verbatim, t3 sharpened at one point, sharing one lhs.
std::vector<BoundReport> compare_families(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s,
                                          double q, NormalizationMode mode = NormalizationMode::Corrected,
                                          const BoundOptions& opts = {});

std::string_view describe_trend(const std::vector<double>& values);

}  // namespace hadamard
