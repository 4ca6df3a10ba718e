#pragma once
//
// Orbit evolution under a Dunford-Schwartz operator: Cesaro averages along a
// checkpoint schedule, convergence detection over the trailing window, and
// the tail-window estimate of the projection onto invariants.
//

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cesaro/ds_op.hpp"
#include "cesaro/matrix_op.hpp"
#include "cesaro/sequence.hpp"
#include "cesaro/space.hpp"

namespace cesaro {

struct EvolveParams {
  std::size_t horizon = 1024;
  // 0 infers the window: the operator's demand if it has one, else enough
  // room that a shift never pushes mass out before the horizon.
  std::size_t dim = 0;
  std::vector<SpaceSpec> norms;            // tracked at every checkpoint
  std::vector<std::size_t> coords;         // 1-based coordinates (sequence runs)
  std::vector<std::size_t> extra_checkpoints;
};

// Dense checkpoint row data for A_n = (1/(n+1)) sum_{k<=n} T^k(x).
struct ErgodicTrace {
  std::vector<std::size_t> steps;
  std::vector<std::string> norm_labels;
  std::vector<std::vector<double>> norms;  // [checkpoint][norm]
  std::vector<std::size_t> coord_indices;
  std::vector<std::vector<cplx>> coords;   // [checkpoint][coord]
  std::vector<double> lost_mass;           // cumulative l1 mass pushed out
  // Trailing window of averages kept for convergence detection.
  std::vector<std::pair<std::size_t, std::vector<cplx>>> snapshots;
  std::vector<cplx> final_average;
  // Mean of T^k(x) over the second half of the run; settles on the invariant
  // part once transients die out.
  std::vector<cplx> pt_estimate;
  std::size_t horizon = 0;
  std::size_t dim = 0;
};

struct MatrixTrace {
  std::vector<std::size_t> steps;
  std::vector<std::string> norm_labels;
  std::vector<std::vector<double>> norms;
  std::vector<double> lost_mass;
  std::vector<std::pair<std::size_t, MatrixOp::Dense>> snapshots;
  MatrixOp::Dense final_average;
  MatrixOp::Dense pt_estimate;
  std::size_t horizon = 0;
  std::size_t dim = 0;
};

// {0..16}, then geometric spacing by 1.5, plus extras and the horizon itself;
// sorted, deduplicated, capped at the horizon.
std::vector<std::size_t> checkpoint_schedule(std::size_t horizon,
                                             std::span<const std::size_t> extras = {});

ErgodicTrace evolve(const DsOp& op, const Seq& x, const EvolveParams& params);
MatrixTrace evolve(const DsOp& op, const MatrixOp& x, const EvolveParams& params);

enum class VerdictStatus { Converged, Diverged, Inconclusive };

struct Verdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  double achieved_tol = 0.0;  // worst pairwise gap over the trailing window
  double limit_norm = 0.0;    // norm of the final average when converged
  std::string certificate;    // which divergence certificate fired, if any
  std::string note;
};

// Cauchy test on the trailing snapshot window: every pairwise difference must
// be small in the given norm, and the window must span at least a factor of
// four in n. Detection alone never declares divergence; that takes a
// certificate. window may not exceed the number of retained snapshots.
Verdict detect_convergence(const ErgodicTrace& trace, const SpaceSpec& spec,
                           double tol = kTolDetectInf, std::size_t window = kDetectWindow);
Verdict detect_convergence(const MatrixTrace& trace, const SpaceSpec& spec,
                           double tol = kTolDetectIdeal, std::size_t window = kDetectWindow);

struct InconclusiveError : std::runtime_error {
  double achieved_tol;
  std::size_t horizon;
  InconclusiveError(const std::string& msg, double tol, std::size_t h)
      : std::runtime_error(msg), achieved_tol(tol), horizon(h) {}
};

// Estimate of the projection of x onto the fixed points of the averaging.
// Throws InconclusiveError when the averages have not settled in sup norm by
// the horizon. The result always satisfies the sup-norm bound and submajorization
// against x; both are asserted internally.
Seq estimate_pt(const DsOp& op, const Seq& x, std::size_t horizon, std::size_t dim = 0,
                double detect_tol = kTolDetectInf);
MatrixOp estimate_pt(const DsOp& op, const MatrixOp& x, std::size_t horizon,
                     double detect_tol = kTolDetectIdeal);

// Residuals of the defining identities of the projection, all in operator
// norm: P(Tx) = P(x), T(Px) = P(x), T^k(Px) = P(x) for k <= 4, P(Px) = P(x).
struct PtReport {
  double pt_of_t = 0.0;
  double t_of_pt = 0.0;
  double power_fix = 0.0;
  double idem = 0.0;
  double worst() const;
};

PtReport verify_pt_identities(const DsOp& op, const MatrixOp& x, std::size_t horizon,
                              double detect_tol = kTolDetectIdeal);

}  // namespace cesaro
