#pragma once
//
// Divergence certificates: finite computations that positively witness the
// failure of mean convergence. The detector alone never reports divergence;
// one of these has to fire.
//

#include <cstddef>
#include <string>
#include <vector>

#include "cesaro/ds_op.hpp"
#include "cesaro/evolve.hpp"
#include "cesaro/space.hpp"
#include "cesaro/weight.hpp"

namespace cesaro {

// Dyadic gap of the shift orbit of e_1: || A_{2n-1} - A_{n-1} || equals 1
// exactly, for every n, whenever the norm is the l1 sum. The averages are
// produced by stepping the operator, not from the closed form.
struct L1GapCertificate {
  std::size_t n_max = 0;
  double max_deviation = 0.0;  // worst |gap - 1| over n = 1..n_max
  bool certified = false;
};

L1GapCertificate certify_l1_divergence(const SpaceSpec& spec, std::size_t n_max, std::size_t dim,
                                       double tol = kTolExact);

// Replays the orbit of the first band coordinate straight from the tables and
// checks that the running averages cross +1/2 and -1/2 alternately at the
// recorded breakpoints.
struct OscillationCertificate {
  std::vector<std::size_t> breakpoints;  // includes the leading 1
  std::vector<double> averages;          // running average at each later breakpoint
  std::size_t alternations = 0;          // crossings confirmed in order
  std::size_t first_violation = 0;       // 1-based breakpoint index, 0 = none
  double first_average = 0.0;            // average at the first breakpoint
  bool certified = false;
};

OscillationCertificate certify_oscillation(const SignPermTables& tables, const Seq& xi_plus,
                                           std::size_t horizon);

// Norm floor for shift averages of a non-increasing witness in a
// non-separable Marcinkiewicz space: every average dominates the shifted tail
// of the witness pointwise, so its norm never drops below the tail norm
// alpha, while the coordinates themselves die off.
struct NonsepCertificate {
  double alpha = 0.0;                  // tail floor at n = horizon/2
  double plateau_variation = 0.0;      // relative spread of the trailing floors
  double min_norm = 0.0;               // smallest measured average norm
  double max_coord_at_horizon = 0.0;   // sup norm of the final average
  double worst_pointwise_slack = 0.0;  // most negative of A_n - tail, at n = horizon/2
  std::vector<std::size_t> sampled_n;
  std::vector<double> norms;
  bool certified = false;
};

NonsepCertificate certify_nonseparable_divergence(const ConcaveWeight& psi, const Seq& xi,
                                                  std::size_t dim, std::size_t horizon);

// Upgrades a non-converged verdict by trying whichever certificate applies to
// this operator/input pair; returns the verdict unchanged when none fires.
// dim is the resolved window of the run.
Verdict attempt_certificates(const SpaceSpec& spec, const DsOp& op, const Seq& x,
                             std::size_t horizon, std::size_t dim, Verdict detected);

// One classify-then-run experiment: the predicted mean ergodic behaviour next
// to what the run (plus certificates, when the detector cannot settle it)
// actually shows.
struct MetOutcome {
  bool predicted_met = false;
  Verdict observed;
  std::string note;
};

MetOutcome met_experiment(const SpaceSpec& spec, const DsOp& op, const Seq& x,
                          std::size_t horizon, std::size_t dim, double tol);

}  // namespace cesaro
