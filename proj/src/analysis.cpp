#include "hadamard/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

namespace hadamard {

namespace {

double lattice(double lo, double hi, int i, int n) { return i == n ? hi : lo + (hi - lo) * i / n; }

GapCell evaluate_cell(const ScanSpec& spec, const Surface& f, const Rect& rect, SExponent s, double x, double y,
                      const BoundOptions& opts) {
    GapCell cell;
    cell.x = x;
    cell.y = y;
    try {
        const BoundReport r = evaluate_spec(spec, f, rect, {x, y}, s, opts);
        cell.lhs = r.lhs;
        cell.rhs = r.rhs;
        cell.margin = r.margin;
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
        cell.lhs = cell.rhs = cell.margin = std::numeric_limits<double>::quiet_NaN();
    }
    return cell;
}

template <bool Parallel>
GapSurface scan(const ScanSpec& spec, const Surface& f, const Rect& rect, SExponent s, int grid_n,
                const BoundOptions& opts) {
    if (grid_n < 2) throw std::invalid_argument("scan grid needs grid_n >= 2");
    GapSurface gap;
    gap.grid_n = grid_n;
    gap.spec = spec;
    gap.s = s.value();
    const int side = grid_n + 1;
    const int cells = side * side;
    gap.grid.resize(static_cast<std::size_t>(cells));

    auto fill = [&](int idx) {
        const int i = idx % side, j = idx / side;
        gap.grid[static_cast<std::size_t>(idx)] = evaluate_cell(spec, f, rect, s, lattice(rect.a(), rect.b(), i, grid_n),
                                                                lattice(rect.c(), rect.d(), j, grid_n), opts);
    };
    if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int idx = 0; idx < cells; ++idx) fill(idx);
    } else {
        for (int idx = 0; idx < cells; ++idx) fill(idx);
    }

    gap.min_margin = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const GapCell& c : gap.grid) {
        if (!c.ok) {
            ++gap.failures;
            continue;
        }
        if (!any || c.margin < gap.min_margin) {
            gap.min_margin = c.margin;
            gap.argmin = {c.x, c.y};
            any = true;
        }
    }
    if (!any) gap.min_margin = std::numeric_limits<double>::quiet_NaN();
    return gap;
}

}  // namespace

BoundReport evaluate_spec(const ScanSpec& spec, const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s,
                          const BoundOptions& opts) {
    switch (spec.family) {
        case BoundFamily::T1: return t1_report(f, rect, pt, s, spec.mode, opts);
        case BoundFamily::T2:
            return t2_report(f, rect, pt, s, make_holder_pair(spec.q.value_or(2.0)), spec.mode, opts);
        case BoundFamily::T3:
            return t3_report(f, rect, pt, s, PowerMeanQ(spec.q.value_or(1.0)), spec.t3_constant, spec.mode, opts);
    }
    return t1_report(f, rect, pt, s, spec.mode, opts);
}

GapSurface scan_gap(const ScanSpec& spec, const Surface& f, const Rect& rect, SExponent s, int grid_n,
                    const BoundOptions& opts) {
    return scan<true>(spec, f, rect, s, grid_n, opts);
}

GapSurface scan_gap_serial(const ScanSpec& spec, const Surface& f, const Rect& rect, SExponent s, int grid_n,
                           const BoundOptions& opts) {
    return scan<false>(spec, f, rect, s, grid_n, opts);
}

Refinement refine_argmin(const GapSurface& gap, const Surface& f, const Rect& rect, const BoundOptions& opts,
                         int iterations) {
    const SExponent s(gap.s);
    Refinement out;
    out.start = gap.argmin;
    out.point = gap.argmin;
    out.margin = evaluate_spec(gap.spec, f, rect, out.point, s, opts).margin;
    double hx = rect.width() / gap.grid_n, hy = rect.height() / gap.grid_n;
    for (int it = 0; it < iterations; ++it) {
        const std::array<EvalPoint, 4> moves{{{out.point.x - hx, out.point.y},
                                              {out.point.x + hx, out.point.y},
                                              {out.point.x, out.point.y - hy},
                                              {out.point.x, out.point.y + hy}}};
        bool improved = false;
        EvalPoint best = out.point;
        double best_margin = out.margin;
        for (EvalPoint m : moves) {
            m.x = std::clamp(m.x, rect.a(), rect.b());
            m.y = std::clamp(m.y, rect.c(), rect.d());
            try {
                const double margin = evaluate_spec(gap.spec, f, rect, m, s, opts).margin;
                if (margin < best_margin) {
                    best_margin = margin;
                    best = m;
                    improved = true;
                }
            } catch (const std::exception&) {
                // Unevaluable neighbours are skipped.
            }
        }
        if (improved) {
            out.point = best;
            out.margin = best_margin;
        } else {
            hx *= 0.5;
            hy *= 0.5;
        }
        out.iterations = it + 1;
    }
    return out;
}

std::string_view describe_trend(const std::vector<double>& v) {
    if (v.size() < 2) return "n/a";
    bool inc = true, dec = true, flat = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (v[i] > v[i - 1]) dec = false, flat = false;
        if (v[i] < v[i - 1]) inc = false, flat = false;
    }
    if (flat) return "constant";
    if (dec) return "decreasing";
    if (inc) return "increasing";
    return "mixed";
}

SweepTable sweep_s(const ScanSpec& spec, const Surface& f, const Rect& rect, const EvalPoint& pt,
                   const std::vector<double>& s_values, const BoundOptions& opts) {
    SweepTable table;
    std::vector<double> rhs;
    for (double s : s_values) {
        table.rows.push_back(evaluate_spec(spec, f, rect, pt, SExponent(s), opts));
        rhs.push_back(table.rows.back().rhs);
    }
    table.rhs_trend = std::string(describe_trend(rhs));
    return table;
}

std::vector<BoundReport> compare_families(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s,
                                          double q, NormalizationMode mode, const BoundOptions& opts) {
    std::vector<BoundReport> rows;
    rows.push_back(t1_report(f, rect, pt, s, mode, opts));
    const double lhs = rows.front().lhs;
    rows.push_back(t2_report(f, rect, pt, s, make_holder_pair(q), mode, opts));
    rows.push_back(t3_report(f, rect, pt, s, PowerMeanQ(q), T3ConstantMode::Verbatim, mode, opts));
    rows.push_back(t3_report(f, rect, pt, s, PowerMeanQ(q), T3ConstantMode::Sharpened, mode, opts));
    // Same identity value in every row.
    for (BoundReport& r : rows) {
        r.lhs = lhs;
        finalize(r, opts.tolerance);
    }
    return rows;
}

}  // namespace hadamard
