#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "hadamard/domain.hpp"
#include "hadamard/surface.hpp"

namespace hadamard {

// Sampling-based search for violations of
//   g(l x1 + (1-l) x2) <= l^s g(x1) + (1-l)^s g(x2)
// over uniform pairs (x1, x2) and l in {1/16, ..., 15/16}. Finding nothing is
// not a proof.
struct SamplerConfig {
    std::uint64_t seed = 0x5eed;
    std::size_t samples = 10000;  // number of (x1, x2) pairs
    double tolerance = 1e-9;      // absolute violation threshold
};

enum class CertificationVerdict { NoCounterexampleFound, Counterexample };

enum class WitnessKind {
    InequalityViolation,
    // The definition is used with nonnegative functions; a sampled negative
    // value is reported with x1 == x2 and lambda == 1.
    NegativeValue,
};

enum class SectionAxis {
    None,        // plain one-dimensional certification
    Horizontal,  // u varies, v fixed
    Vertical,    // v varies, u fixed
};

struct Witness {
    WitnessKind kind = WitnessKind::InequalityViolation;
    double x1 = 0.0;
    double x2 = 0.0;
    double lambda = 0.0;
    double lhs = 0.0;    // g(l x1 + (1-l) x2), or g(x1) for NegativeValue
    double rhs = 0.0;    // l^s g(x1) + (1-l)^s g(x2), or 0 for NegativeValue
    double slack = 0.0;  // lhs - rhs, > tolerance for a violation
    SectionAxis axis = SectionAxis::None;
    double fixed = 0.0;  // the frozen coordinate of a section
};

struct CertificationReport {
    CertificationVerdict verdict = CertificationVerdict::NoCounterexampleFound;
    std::optional<Witness> witness;
    std::size_t samples_used = 0;
};

// Requires 0 <= lo < hi.
CertificationReport certify_s_convex_second_sense(const UnivariateFn& g, SExponent s, double lo, double hi,
                                                  const SamplerConfig& cfg = {});

// Certifies horizontal sections u -> g(u, v0) and vertical sections
// v -> g(u0, v) at sampled v0, u0. Requires rect inside [0, inf)^2.
CertificationReport certify_coordinated(const BivariateFn& g, const Rect& rect, SExponent s,
                                        const SamplerConfig& cfg = {});
CertificationReport certify_coordinated(const Surface& g, const Rect& rect, SExponent s,
                                        const SamplerConfig& cfg = {});

// Re-evaluates a witness; true when it still violates by more than tol.
bool replay_witness(const UnivariateFn& g, SExponent s, const Witness& w, double tol);
bool replay_witness(const BivariateFn& g, SExponent s, const Witness& w, double tol);

// (u, v) -> |d^2 f / du dv (u, v)|^q, the function whose co-ordinated
// s-convexity the bounds assume.
BivariateFn abs_mixed_power(const Surface& f, double q = 1.0);

}  // namespace hadamard
