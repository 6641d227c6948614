#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hadamard/certify.hpp"
#include "hadamard/domain.hpp"
#include "hadamard/identity.hpp"
#include "hadamard/quad.hpp"
#include "hadamard/surface.hpp"

namespace hadamard {

enum class TheoremId {
    T1,
    T2,
    T3,
    C1_1,
    C1_2,
    C1_3,
    C1_4,
    C1_mid,
    C2_1,
    C2_2,
    C2_3,
    C2_4,
    C2_5,
    C3_1,
    C3_2,
    C3_3,
    C3_4,
    C3_5,
    R_c15,
    R_metu,
    R_final,
    Chain,
};

std::string_view to_string(TheoremId id) noexcept;
// Accepts the to_string names ("t1", "c2_3", "r_metu", ...) and "mid" for c1_mid.
TheoremId parse_theorem_id(std::string_view text);

// The three bound families; corner and midpoint corollaries are
// specializations of one of them.
enum class BoundFamily { T1, T2, T3 };

std::string_view to_string(BoundFamily family) noexcept;

enum class RemarkId { C15, METU, FINAL };

// Corollary id of the corner specialization pt = corner. Parts (1)-(4) of
// each corollary are the points (a,c), (b,d), (a,d), (b,c) in that order.
TheoremId corner_theorem_id(BoundFamily family, Corner corner) noexcept;
TheoremId midpoint_theorem_id(BoundFamily family) noexcept;
TheoremId remark_theorem_id(RemarkId remark) noexcept;

// Short keys for known defects of the printed formulas, attached to reports.
inline constexpr std::string_view kNoteANormalization = "A_NORMALIZATION";
inline constexpr std::string_view kNoteT3Constant = "T3_CONSTANT";

struct BoundParams {
    Rect rect{0.0, 1.0, 0.0, 1.0};
    std::optional<EvalPoint> pt;
    double s = 1.0;
    std::optional<double> q;
    NormalizationMode mode = NormalizationMode::Corrected;
    std::optional<T3ConstantMode> t3_constant;
};

// holds <=> margin >= -(abs + rel * |rhs|).
struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-12;

    double at(double rhs) const noexcept { return abs + rel * std::abs(rhs); }
};

struct BoundOptions {
    QuadConfig quad{};
    IntegrationPath path = IntegrationPath::Auto;
    Tolerance tolerance{};
    // When set, |D|^q is sampled for co-ordinated s-convexity and the result
    // stored in the report. Never blocks evaluation.
    bool certify = false;
    SamplerConfig sampler{};
};

struct BoundReport {
    TheoremId theorem_id = TheoremId::T1;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool holds = true;
    BoundParams params;
    double tol = 0.0;
    std::optional<bool> hypothesis_certified;  // empty when not checked
    std::vector<std::string> notes;
};

// Fills margin, tol and holds from lhs and rhs.
void finalize(BoundReport& report, const Tolerance& tolerance);

struct ChainEvaluation {
    std::array<double, 5> e{};
    bool monotone = true;
    double tol = 1e-10;
    std::optional<bool> hypothesis_certified;
};

double mixed_abs(const Surface& f, const EvalPoint& pt);

double t1_rhs(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s);
double t2_rhs(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, HolderPair hp);
double t3_rhs(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, PowerMeanQ q,
              T3ConstantMode constant);

// lhs = |lemma_lhs(f, rect, pt, mode)|.
BoundReport t1_report(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, NormalizationMode mode,
                      const BoundOptions& opts = {});
BoundReport t2_report(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, HolderPair hp,
                      NormalizationMode mode, const BoundOptions& opts = {});
BoundReport t3_report(const Surface& f, const Rect& rect, const EvalPoint& pt, SExponent s, PowerMeanQ q,
                      T3ConstantMode constant, NormalizationMode mode, const BoundOptions& opts = {});

// Corner corollaries. lhs is the corrected left side at pt = corner; rhs is
// the corollary display. q is required for T2 (q > 1) and T3 (q >= 1).
double corner_rhs(BoundFamily family, Corner corner, const Surface& f, const Rect& rect, SExponent s,
                  std::optional<double> q = std::nullopt, T3ConstantMode constant = T3ConstantMode::Verbatim);
BoundReport corner_report(BoundFamily family, Corner corner, const Surface& f, const Rect& rect, SExponent s,
                          std::optional<double> q = std::nullopt,
                          T3ConstantMode constant = T3ConstantMode::Verbatim, const BoundOptions& opts = {});

// Midpoint corollaries; lhs is
// |1/4 sum f(corners) - 1/2 (sum of the four edge means) + area mean of f|.
double midpoint_lhs(const Surface& f, const Rect& rect, const QuadConfig& cfg = {},
                    IntegrationPath path = IntegrationPath::Auto);
double midpoint_rhs(BoundFamily family, const Surface& f, const Rect& rect, SExponent s,
                    std::optional<double> q = std::nullopt, T3ConstantMode constant = T3ConstantMode::Verbatim);
BoundReport midpoint_report(BoundFamily family, const Surface& f, const Rect& rect, SExponent s,
                            std::optional<double> q = std::nullopt,
                            T3ConstantMode constant = T3ConstantMode::Verbatim, const BoundOptions& opts = {});

// Summed corner bounds. lhs is the sum over corners of
// |area * f(opposite) - ... + int int f|, i.e. area times the corner lhs sum.
// q is required for METU (q > 1) and FINAL (q >= 1).
double remark_rhs(RemarkId remark, const Surface& f, const Rect& rect, SExponent s,
                  std::optional<double> q = std::nullopt, T3ConstantMode constant = T3ConstantMode::Verbatim);
BoundReport remark_aggregate(RemarkId remark, const Surface& f, const Rect& rect, SExponent s,
                             std::optional<double> q = std::nullopt,
                             T3ConstantMode constant = T3ConstantMode::Verbatim, const BoundOptions& opts = {});

// The five-term Hermite-Hadamard chain for co-ordinated s-convex f:
//   e0 = 4^(s-1) f(midpoint)
//   e1 = 2^(s-2) [mean of f(., (c+d)/2) + mean of f((a+b)/2, .)]
//   e2 = area mean of f
//   e3 = [sum of the four edge means] / (2(s+1))
//   e4 = [f(a,c) + f(a,d) + f(b,c) + f(b,d)] / (s+1)^2
// monotone <=> e_i <= e_{i+1} + tol for all i.
ChainEvaluation chain_evaluate(const Surface& f, const Rect& rect, SExponent s, const QuadConfig& cfg = {},
                               double tol = 1e-10, bool certify = false, const SamplerConfig& sampler = {});

// Samples |D|^q for co-ordinated s-convexity on rect.
bool hypothesis_holds(const Surface& f, const Rect& rect, SExponent s, double q, const SamplerConfig& sampler);

}  // namespace hadamard
