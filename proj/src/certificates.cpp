#include "cesaro/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "cesaro/kernels.hpp"

namespace cesaro {

namespace {

// Thresholds of the norm-floor certificate.
constexpr double kAlphaFloor = 0.1;      // tail floor must be at least this
constexpr double kPlateauTol = 0.05;     // relative spread of the trailing floors
constexpr double kNormSlack = 1e-6;      // measured norms may sit this far under alpha

void require_real_nonneg(const Seq& xi, const char* what) {
  for (const cplx& v : xi.values()) {
    if (v.imag() != 0.0 || v.real() < 0.0)
      throw ValidationError(std::string(what) + " must be real and nonnegative");
  }
}

}  // namespace

L1GapCertificate certify_l1_divergence(const SpaceSpec& spec, std::size_t n_max,
                                       std::size_t dim, double tol) {
  if (n_max == 0) throw ValidationError("need at least one dyadic pair");
  if (dim <= 2 * n_max)
    throw ValidationError("window must exceed twice n_max so no mass is lost");

  const DsOpPtr op = DsOp::shift();
  std::vector<cplx> state_a(dim, cplx(0.0)), state_b(dim, cplx(0.0));
  state_a[0] = 1.0;
  state_b[0] = 1.0;
  std::vector<cplx> sum_a = state_a, sum_b = state_b;  // running sums S_k
  std::vector<cplx> scratch(dim), diff(dim);
  double lost = 0.0;
  std::size_t ka = 0, kb = 0;

  L1GapCertificate cert;
  cert.n_max = n_max;
  for (std::size_t n = 1; n <= n_max; ++n) {
    while (ka < n - 1) {
      lost += op->step_seq(state_a, scratch);
      kernels::acc_add(sum_a.data(), state_a.data(), dim);
      ++ka;
    }
    while (kb < 2 * n - 1) {
      lost += op->step_seq(state_b, scratch);
      kernels::acc_add(sum_b.data(), state_b.data(), dim);
      ++kb;
    }
    // diff = A_{2n-1} - A_{n-1}
    kernels::scale(diff.data(), sum_b.data(), 1.0 / double(2 * n), dim);
    kernels::axpy(diff.data(), sum_a.data(), -1.0 / double(n), dim);
    const double gap = space_norm(spec, std::span<const cplx>(diff));
    cert.max_deviation = std::max(cert.max_deviation, std::abs(gap - 1.0));
  }
  if (lost != 0.0) throw ValidationError("mass escaped the window during certification");
  cert.certified = cert.max_deviation <= tol;
  return cert;
}

OscillationCertificate certify_oscillation(const SignPermTables& tables, const Seq& xi_plus,
                                           std::size_t horizon) {
  require_real_nonneg(xi_plus, "oscillation witness");
  if (horizon == 0) throw ValidationError("horizon must be positive");

  OscillationCertificate cert;
  cert.breakpoints = tables.breakpoints();
  if (cert.breakpoints.size() < 2) return cert;  // nothing to alternate against

  const auto& g = tables.g;
  double run = 0.0;
  double sign = 1.0;  // sign the next orbit term enters with
  std::size_t next = 1;
  bool clean = true;
  for (std::size_t k = 0; next < cert.breakpoints.size() && k < horizon; ++k) {
    const double val = (k < g.size()) ? xi_plus.at(g[k]).real() : 0.0;
    run += sign * val;
    if (k < g.size()) sign *= double(tables.phi[g[k] - 1]);
    const std::size_t n = k + 1;
    if (n != cert.breakpoints[next]) continue;
    const double avg = run / double(n);
    cert.averages.push_back(avg);
    if (next == 1) cert.first_average = avg;
    const bool want_high = (next % 2 == 1);
    if (want_high ? avg > 0.5 : avg < -0.5) {
      if (clean) cert.alternations = next;
    } else if (clean) {
      cert.first_violation = next;
      clean = false;
    }
    ++next;
  }
  cert.certified = clean && next == cert.breakpoints.size();
  return cert;
}

NonsepCertificate certify_nonseparable_divergence(const ConcaveWeight& psi, const Seq& xi,
                                                  std::size_t dim, std::size_t horizon) {
  require_real_nonneg(xi, "norm-floor witness");
  if (horizon < 32) throw ValidationError("norm-floor certification needs a longer run");
  if (xi.support() == 0) throw ValidationError("norm-floor witness must be nonzero");
  if (xi.support() > dim) throw ValidationError("witness extends past the window");
  const auto& vals = xi.values();
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i].real() > vals[i - 1].real())
      throw ValidationError("norm-floor witness must be non-increasing");
  }

  // prefix[m] = xi_1 + ... + xi_m
  const std::size_t s = vals.size();
  std::vector<double> prefix(s + 1, 0.0);
  for (std::size_t i = 0; i < s; ++i) prefix[i + 1] = prefix[i] + vals[i].real();

  // Norm of the tail (xi_{n+1}, xi_{n+2}, ...), already non-increasing.
  auto tail_floor = [&](std::size_t n) {
    double best = 0.0;
    for (std::size_t k = 1; n + k <= s; ++k)
      best = std::max(best, (prefix[n + k] - prefix[n]) / psi(double(k)));
    return best;
  };

  NonsepCertificate cert;
  const std::size_t half = horizon / 2;
  cert.alpha = tail_floor(half);
  if (cert.alpha < kAlphaFloor) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "tail floor %.3g at n = %zu is below %.2g; the input does not witness a floor",
                  cert.alpha, half, kAlphaFloor);
    throw ValidationError(buf);
  }
  double lo = cert.alpha, hi = cert.alpha;
  for (std::size_t n = half - std::min<std::size_t>(half, 9); n <= half; ++n) {
    const double a = tail_floor(n);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  cert.plateau_variation = (hi - lo) / hi;
  if (cert.plateau_variation >= kPlateauTol) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "tail floor still varies by %.3g near n = %zu; grow the truncation",
                  cert.plateau_variation, half);
    throw ValidationError(buf);
  }

  // Averages dominate the shifted tail pointwise: every term of the average
  // at coordinate m > n is some xi_{m-k} with k <= n, and xi is non-increasing.
  const DsOpPtr op = DsOp::shift();
  {
    const Applied a = cesaro_average(*op, xi, half, dim);
    double slack = 0.0;
    for (std::size_t m = half + 1; m <= s; ++m)
      slack = std::min(slack, a.value.at(m).real() - vals[m - 1].real());
    cert.worst_pointwise_slack = slack;
  }

  EvolveParams params;
  params.horizon = horizon;
  params.dim = dim;
  params.norms = {SpaceSpec::marcinkiewicz(std::make_shared<const ConcaveWeight>(psi))};
  const ErgodicTrace trace = evolve(*op, xi, params);
  cert.sampled_n = trace.steps;
  cert.min_norm = trace.norms.front()[0];
  for (const auto& row : trace.norms) {
    cert.min_norm = std::min(cert.min_norm, row[0]);
    cert.norms.push_back(row[0]);
  }
  cert.max_coord_at_horizon =
      kernels::max_abs_c(trace.final_average.data(), trace.final_average.size());

  cert.certified = cert.min_norm >= cert.alpha - kNormSlack &&
                   cert.worst_pointwise_slack >= -kTolSvd;
  return cert;
}

Verdict attempt_certificates(const SpaceSpec& spec, const DsOp& op, const Seq& x,
                             std::size_t horizon, std::size_t dim, Verdict detected) {
  if (detected.status == VerdictStatus::Converged) return detected;
  const Classification cls = classify(spec);

  // A certificate that rejects its input is simply not applicable here; the
  // verdict stays as detected.
  try {
    if (op.kind() == OpKind::Shift && cls.equals_l1 && spec.kind != SpaceKind::Marcinkiewicz &&
        x == Seq::basis(1)) {
      const std::size_t n_max = std::min(horizon / 2, dim > 0 ? (dim - 1) / 2 : std::size_t{0});
      if (n_max > 0) {
        const L1GapCertificate cert = certify_l1_divergence(spec, n_max, dim);
        if (cert.certified) {
          detected.status = VerdictStatus::Diverged;
          detected.certificate = "l1-gap";
          char buf[128];
          std::snprintf(buf, sizeof buf,
                        "dyadic averages stay a full unit apart (worst deviation %.2g)",
                        cert.max_deviation);
          detected.note = buf;
        }
      }
    } else if (op.kind() == OpKind::SignPerm) {
      const OscillationCertificate cert = certify_oscillation(*op.tables(), x, horizon);
      if (cert.certified && cert.alternations >= 2) {
        detected.status = VerdictStatus::Diverged;
        detected.certificate = "alternation";
        char buf[128];
        std::snprintf(buf, sizeof buf, "averages cross +-1/2 alternately %zu times",
                      cert.alternations);
        detected.note = buf;
      }
    } else if (spec.kind == SpaceKind::Marcinkiewicz && !cls.separable &&
               op.kind() == OpKind::Shift) {
      const NonsepCertificate cert = certify_nonseparable_divergence(*spec.psi, x, dim, horizon);
      if (cert.certified) {
        detected.status = VerdictStatus::Diverged;
        detected.certificate = "norm-floor";
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "norms never drop below %.3g while the sup norm falls to %.2g",
                      cert.alpha - kNormSlack, cert.max_coord_at_horizon);
        detected.note = buf;
      }
    }
  } catch (const ValidationError& e) {
    detected.note += std::string("; certificate not applicable: ") + e.what();
  }
  return detected;
}

MetOutcome met_experiment(const SpaceSpec& spec, const DsOp& op, const Seq& x,
                          std::size_t horizon, std::size_t dim, double tol) {
  MetOutcome out;
  out.predicted_met = classify(spec).met;

  EvolveParams params;
  params.horizon = horizon;
  params.dim = dim;
  params.norms = {spec};
  params.coords = {1};
  const ErgodicTrace trace = evolve(op, x, params);
  out.observed = detect_convergence(trace, spec, tol);
  out.observed = attempt_certificates(spec, op, x, horizon, trace.dim, out.observed);

  const bool observed_met = out.observed.status == VerdictStatus::Converged;
  if (out.observed.status == VerdictStatus::Inconclusive) {
    out.note = "inconclusive at this horizon";
  } else if (observed_met == out.predicted_met) {
    out.note = "agrees with the classifier";
  } else {
    out.note = "MISMATCH against the classifier";
  }
  return out;
}

}  // namespace cesaro
