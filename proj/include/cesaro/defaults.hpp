#pragma once
//
// Shared tolerances and probe parameters.  Every numeric gate in the library
// and its test suites refers to these constants by name.
//

#include <stdexcept>
#include <string>

namespace cesaro {

// Identities that hold exactly in exact arithmetic (trace preservation,
// prefix-sum comparisons on O(1)-scaled data, closed-form averages).
inline constexpr double kTolExact = 1e-12;

// Scalar root finding (Luxemburg bisection promises at least this much;
// the implementation actually drives the bracket to ~3e-15 relative).
inline constexpr double kTolRoot = 1e-10;

// Singular value computations; also the eigenvalue floor accepted as
// "nonnegative" when certifying positive semidefiniteness.
inline constexpr double kTolSvd = 1e-9;

// Convergence detection defaults for Cesaro average traces.
inline constexpr double kTolDetectInf = 1e-8;
inline constexpr double kTolDetectIdeal = 1e-6;

// "Bounded away from zero" threshold for sampled limit estimates
// (Orlicz phi(u)/u at 0, weight psi(t)/t at infinity).
inline constexpr double kLimitThreshold = 1e-6;

// Doubling-constant cap: phi(2u)/phi(u) <= kDelta2Max on the probe grid.
inline constexpr double kDelta2Max = 1e3;

// Weight probes run t over 2^1..2^kInfProbeMax (divergence at infinity)
// and 2^-1..2^-kZeroProbeMax (behaviour at zero).
inline constexpr int kInfProbeMax = 60;
inline constexpr int kZeroProbeMax = 40;

// A concave weight counts as unbounded when its last doubling increment
// psi(2t)-psi(t) at t = 2^(kInfProbeMax-1) still exceeds this.
inline constexpr double kWeightIncrementFloor = 1e-8;

// Trailing-window width used by convergence detection.
inline constexpr std::size_t kDetectWindow = 8;
// The window must span at least this factor in n to count as scale-free.
inline constexpr double kDetectSpan = 4.0;

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cesaro
