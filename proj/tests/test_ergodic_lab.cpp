#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cesaro/certificates.hpp"
#include "cesaro/evolve.hpp"
#include "cesaro/generators.hpp"
#include "cesaro/singular.hpp"

using namespace cesaro;

namespace {

EvolveParams params_for(std::size_t horizon, std::vector<SpaceSpec> norms,
                        std::vector<std::size_t> coords = {}, std::size_t dim = 0) {
  EvolveParams p;
  p.horizon = horizon;
  p.dim = dim;
  p.norms = std::move(norms);
  p.coords = std::move(coords);
  return p;
}

}  // namespace

TEST_CASE("checkpoint schedule: dense head, geometric tail, horizon kept") {
  const auto cps = checkpoint_schedule(64);
  const std::vector<std::size_t> want = {0, 1, 2,  3,  4,  5,  6,  7,  8,  9, 10,
                                         11, 12, 13, 14, 15, 16, 24, 36, 54, 64};
  CHECK(cps == want);

  const auto small = checkpoint_schedule(5);
  CHECK(small == std::vector<std::size_t>{0, 1, 2, 3, 4, 5});

  const std::vector<std::size_t> extras = {100, 999};
  const auto with_extras = checkpoint_schedule(1000, extras);
  CHECK(std::count(with_extras.begin(), with_extras.end(), 100) == 1);
  CHECK(std::count(with_extras.begin(), with_extras.end(), 999) == 1);
  CHECK(with_extras.back() == 1000);
  CHECK(std::is_sorted(with_extras.begin(), with_extras.end()));
}

TEST_CASE("shift averages of e1 follow the closed dyadic form") {
  const auto trace = evolve(*DsOp::shift(), Seq::basis(1),
                            params_for(512, {SpaceSpec::lp(1.0), SpaceSpec::lp(1.5),
                                             SpaceSpec::lp(2.0), SpaceSpec::c0()},
                                       {1, 5}));
  REQUIRE(trace.steps == checkpoint_schedule(512));
  REQUIRE(trace.norms.size() == trace.steps.size());
  for (std::size_t r = 0; r < trace.steps.size(); ++r) {
    const double n1 = double(trace.steps[r] + 1);
    CHECK(trace.norms[r][0] == doctest::Approx(1.0).epsilon(1e-12));            // l1 mass
    CHECK(trace.norms[r][1] == doctest::Approx(std::pow(n1, 1.0 / 1.5 - 1.0)).epsilon(1e-12));
    CHECK(trace.norms[r][2] == doctest::Approx(std::pow(n1, -0.5)).epsilon(1e-12));
    CHECK(trace.norms[r][3] == doctest::Approx(1.0 / n1).epsilon(1e-12));       // sup
    CHECK(trace.lost_mass[r] == 0.0);
    // coordinate 1 carries 1/(n+1); coordinate 5 joins once n >= 4
    CHECK(trace.coords[r][0].real() == doctest::Approx(1.0 / n1).epsilon(1e-12));
    const double c5 = trace.steps[r] >= 4 ? 1.0 / n1 : 0.0;
    CHECK(trace.coords[r][1].real() == doctest::Approx(c5).epsilon(1e-12));
  }
}

TEST_CASE("a tight window reports the mass it loses") {
  const auto trace =
      evolve(*DsOp::shift(), Seq::basis(1), params_for(64, {SpaceSpec::lp(1.0)}, {}, 16));
  CHECK(trace.dim == 16);
  CHECK(trace.lost_mass.back() == doctest::Approx(1.0).epsilon(1e-12));
  // l1 norm of the final average: only the first 16 of 65 shifted copies stay
  CHECK(trace.norms.back()[0] == doctest::Approx(16.0 / 65.0).epsilon(1e-12));
}

TEST_CASE("dedicated shift path agrees with the generic loop") {
  Rng rng(401);
  for (int trial = 0; trial < 6; ++trial) {
    const Seq x = random_seq(rng, 12);
    const auto params = params_for(300, {SpaceSpec::lp(1.0), SpaceSpec::lp(2.0), SpaceSpec::c0()},
                                   {1, 3, 7}, 64);
    const auto fast = evolve(*DsOp::shift(), x, params);
    // a one-part composition takes the step-by-step route
    const auto slow = evolve(*DsOp::compose({DsOp::shift()}), x, params);

    REQUIRE(fast.steps == slow.steps);
    for (std::size_t r = 0; r < fast.steps.size(); ++r) {
      for (std::size_t c = 0; c < fast.norms[r].size(); ++c)
        CHECK(fast.norms[r][c] == doctest::Approx(slow.norms[r][c]).epsilon(1e-12));
      for (std::size_t c = 0; c < fast.coords[r].size(); ++c)
        CHECK(std::abs(fast.coords[r][c] - slow.coords[r][c]) < 1e-12);
      CHECK(fast.lost_mass[r] == doctest::Approx(slow.lost_mass[r]).epsilon(1e-12));
    }
    REQUIRE(fast.final_average.size() == slow.final_average.size());
    for (std::size_t i = 0; i < fast.final_average.size(); ++i)
      CHECK(std::abs(fast.final_average[i] - slow.final_average[i]) < 1e-12);
    for (std::size_t i = 0; i < fast.pt_estimate.size(); ++i)
      CHECK(std::abs(fast.pt_estimate[i] - slow.pt_estimate[i]) < 1e-12);
  }
}

TEST_CASE("repeat runs are bit-identical") {
  Rng rng1(402), rng2(402);
  const Seq x1 = random_seq(rng1, 20), x2 = random_seq(rng2, 20);
  REQUIRE(x1 == x2);
  const auto params = params_for(500, {SpaceSpec::lorentz(ConcaveWeight::sqrt())}, {1});
  const auto a = evolve(*DsOp::shift(), x1, params);
  const auto b = evolve(*DsOp::shift(), x2, params);
  CHECK(a.norms == b.norms);
  CHECK(a.coords == b.coords);
  CHECK(a.final_average == b.final_average);
}

TEST_CASE("detection: settling run converges at a tolerance matching its decay") {
  const auto trace =
      evolve(*DsOp::shift(), Seq::basis(1), params_for(4096, {SpaceSpec::lp(2.0)}));
  const Verdict v = detect_convergence(trace, SpaceSpec::lp(2.0), 0.1);
  CHECK(v.status == VerdictStatus::Converged);
  CHECK(v.achieved_tol < 0.1);
  CHECK(v.achieved_tol > 0.0);
  CHECK(v.limit_norm == doctest::Approx(std::pow(4097.0, -0.5)).epsilon(1e-9));

  // the same trace is not settled at the default ideal tolerance, and
  // detection alone never declares divergence
  const Verdict tight = detect_convergence(trace, SpaceSpec::lp(2.0));
  CHECK(tight.status == VerdictStatus::Inconclusive);
  CHECK_FALSE(tight.note.empty());
}

TEST_CASE("detection: trailing window must span a factor of four") {
  const auto trace = evolve(*DsOp::shift(), Seq::basis(1), params_for(16, {SpaceSpec::c0()}));
  const Verdict v = detect_convergence(trace, SpaceSpec::c0(), 0.5);
  CHECK(v.status == VerdictStatus::Inconclusive);
  CHECK(std::isinf(v.achieved_tol));
}

TEST_CASE("detection validates the window parameter") {
  const auto trace = evolve(*DsOp::shift(), Seq::basis(1), params_for(256, {SpaceSpec::c0()}));
  CHECK_THROWS_AS(detect_convergence(trace, SpaceSpec::c0(), 0.1, 1), ValidationError);
  CHECK_THROWS_AS(detect_convergence(trace, SpaceSpec::c0(), 0.1, 9), ValidationError);
  // a narrower window is allowed and spans less
  const Verdict v = detect_convergence(trace, SpaceSpec::c0(), 0.1, 2);
  CHECK(v.status == VerdictStatus::Inconclusive);  // 256/182 < 4
}

TEST_CASE("projection estimate: shift sends everything to zero") {
  const Seq pt = estimate_pt(*DsOp::shift(), Seq::basis(1), 4096, 0, 0.05);
  CHECK(lp_norm(std::numeric_limits<double>::infinity(), pt.span()) < 1e-3);
  CHECK(hlp_leq(pt, Seq::basis(1), 1e-9));
}

TEST_CASE("projection estimate refuses an oscillating run") {
  const SignPermPlan plan = plan_sign_perm(Seq::ones(1000), 6, 1000, 1000);
  const auto op = DsOp::sign_perm(plan.tables);
  try {
    estimate_pt(*op, plan.xi_scaled, 1000, 1000);
    FAIL("expected InconclusiveError");
  } catch (const InconclusiveError& e) {
    CHECK(e.achieved_tol > 0.1);
    CHECK(e.horizon == 1000);
    CHECK(std::string(e.what()).find("settle") != std::string::npos);
  }
}

TEST_CASE("projection identities on a compression") {
  Rng rng(403);
  const MatrixOp p = rank_k_projection(rng, 8, 3);
  const auto op = DsOp::conjugation(p);
  const MatrixOp y = random_matrix(rng, 8);

  const MatrixOp pt = estimate_pt(*op, y, 4096, 0.05);
  const MatrixOp::Dense fixed = p.mat() * y.mat() * p.mat();
  CHECK((pt.mat() - fixed).cwiseAbs().maxCoeff() < 1e-9);

  const PtReport rep = verify_pt_identities(*op, y, 4096, 0.05);
  CHECK(rep.worst() < 1e-6);
  CHECK(rep.pt_of_t < 1e-6);
  CHECK(rep.t_of_pt < 1e-6);
  CHECK(rep.power_fix < 1e-6);
  CHECK(rep.idem < 1e-6);
}

TEST_CASE("projection identities on a dying orbit") {
  Rng rng(404);
  const auto op = DsOp::diag_lift(DsOp::shift());
  const MatrixOp y = random_matrix(rng, 16);
  const MatrixOp pt = estimate_pt(*op, y, 16384, 0.05);
  // every diagonal entry is pushed out within 16 steps, so the tail mean
  // vanishes identically
  CHECK(op_norm_inf(pt) < 1e-12);
  CHECK(verify_pt_identities(*op, y, 16384, 0.05).worst() < 1e-9);
}

TEST_CASE("unit gap certificate for spaces that are literally l1") {
  for (const char* label : {"lp:1", "lorentz:linear", "orlicz:linear"}) {
    CAPTURE(label);
    const L1GapCertificate cert = certify_l1_divergence(parse_space(label), 64, 130);
    CHECK(cert.certified);
    CHECK(cert.max_deviation <= 1e-12);
    CHECK(cert.n_max == 64);
  }
  // the gap shrinks in l2, so the certificate honestly fails there
  const L1GapCertificate l2 = certify_l1_divergence(SpaceSpec::lp(2.0), 64, 130);
  CHECK_FALSE(l2.certified);
  CHECK(l2.max_deviation > 0.5);
  // the window must be wide enough that nothing falls off
  CHECK_THROWS_AS(certify_l1_divergence(SpaceSpec::lp(1.0), 64, 128), ValidationError);
}

TEST_CASE("oscillation certificate replays the breakpoint table") {
  const SignPermPlan plan = plan_sign_perm(Seq::ones(200), 3, 10000, 200);
  const OscillationCertificate cert = certify_oscillation(plan.tables, plan.xi_scaled, 10000);
  CHECK(cert.certified);
  CHECK(cert.alternations == 3);
  CHECK(cert.first_violation == 0);
  REQUIRE(cert.breakpoints.size() == 4);
  REQUIRE(cert.averages.size() == 3);
  CHECK(cert.first_average == doctest::Approx(1.0));
  for (std::size_t i = 0; i < cert.averages.size(); ++i) {
    const bool high = i % 2 == 0;
    CHECK((high ? cert.averages[i] > 0.5 : cert.averages[i] < -0.5));
  }
  // a horizon too short to reach the last breakpoint cannot certify
  const OscillationCertificate capped = certify_oscillation(plan.tables, plan.xi_scaled, 5);
  CHECK_FALSE(capped.certified);
}

TEST_CASE("norm-floor certificate for the unbounded-weight witness") {
  const auto psi = ConcaveWeight::log1p();
  const Seq xi = marcinkiewicz_witness(*psi, 4096);
  const NonsepCertificate cert = certify_nonseparable_divergence(*psi, xi, 4096, 256);
  CHECK(cert.certified);
  CHECK(cert.alpha > 0.35);
  CHECK(cert.alpha < 0.5);
  CHECK(cert.plateau_variation < 0.05);
  CHECK(cert.min_norm >= cert.alpha - 1e-6);
  CHECK(cert.worst_pointwise_slack >= -1e-9);
  CHECK(cert.max_coord_at_horizon < 0.04);
  CHECK(cert.sampled_n.size() == cert.norms.size());

  // a bounded weight has no tail floor to stand on
  const auto bounded = ConcaveWeight::exp_decay();
  const Seq flat = marcinkiewicz_witness(*bounded, 4096);
  CHECK_THROWS_AS(certify_nonseparable_divergence(*bounded, flat, 4096, 256), ValidationError);
  // short runs are refused outright
  CHECK_THROWS_AS(certify_nonseparable_divergence(*psi, xi, 4096, 16), ValidationError);
}

TEST_CASE("classifier predictions meet the measurements") {
  // separable and distinct from l1: averaging settles, classifier says MET
  const MetOutcome met = met_experiment(SpaceSpec::lp(2.0), *DsOp::shift(), Seq::basis(1),
                                        4096, 0, 0.1);
  CHECK(met.predicted_met);
  CHECK(met.observed.status == VerdictStatus::Converged);
  CHECK(met.note.find("agrees") != std::string::npos);

  // literally l1: the unit gap certificate fires, classifier says no MET
  const MetOutcome l1 = met_experiment(SpaceSpec::lp(1.0), *DsOp::shift(), Seq::basis(1),
                                       2048, 0, kTolDetectIdeal);
  CHECK_FALSE(l1.predicted_met);
  CHECK(l1.observed.status == VerdictStatus::Diverged);
  CHECK(l1.observed.certificate == "l1-gap");
  CHECK(l1.note.find("agrees") != std::string::npos);

  // an over-tight tolerance leaves the run inconclusive, reported as such
  const MetOutcome open = met_experiment(SpaceSpec::lp(2.0), *DsOp::shift(), Seq::basis(1),
                                         4096, 0, 1e-9);
  CHECK(open.observed.status == VerdictStatus::Inconclusive);
  CHECK(open.note.find("inconclusive") != std::string::npos);
}

TEST_CASE("matrix evolution matches the sequence run on diagonal input") {
  Rng rng(405);
  const Seq x = random_seq(rng, 10);
  const auto params = params_for(200, {SpaceSpec::lp(1.0), SpaceSpec::lp(2.0)}, {}, 16);

  const auto seq_trace = evolve(*DsOp::shift(), x, params);
  auto mat_params = params;
  mat_params.dim = 0;
  const auto mat_trace =
      evolve(*DsOp::diag_lift(DsOp::shift()), diag_embed(x, 16), mat_params);

  REQUIRE(seq_trace.steps == mat_trace.steps);
  for (std::size_t r = 0; r < seq_trace.steps.size(); ++r) {
    CHECK(mat_trace.norms[r][0] == doctest::Approx(seq_trace.norms[r][0]).epsilon(1e-9));
    CHECK(mat_trace.norms[r][1] == doctest::Approx(seq_trace.norms[r][1]).epsilon(1e-9));
    CHECK(mat_trace.lost_mass[r] == doctest::Approx(seq_trace.lost_mass[r]).epsilon(1e-9));
  }
}

TEST_CASE("evolution rejects mismatched shapes") {
  CHECK_THROWS_AS(evolve(*DsOp::diag_lift(DsOp::shift()), Seq::basis(1),
                         params_for(10, {SpaceSpec::c0()})),
                  ValidationError);
  Rng rng(406);
  const MatrixOp y = random_matrix(rng, 4);
  CHECK_THROWS_AS(evolve(*DsOp::shift(), y, params_for(10, {SpaceSpec::lp(1.0)})),
                  ValidationError);
  auto p = params_for(0, {SpaceSpec::c0()});
  CHECK_THROWS_AS(evolve(*DsOp::shift(), Seq::basis(1), p), ValidationError);
}
