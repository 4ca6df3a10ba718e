#include "cesaro/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "cesaro/kernels.hpp"
#include "cesaro/singular.hpp"

namespace cesaro {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t resolve_evolve_dim(const DsOp& op, std::size_t support, const EvolveParams& p) {
  const std::size_t rd = op.required_dim();
  std::size_t dim = p.dim ? p.dim : (rd ? rd : support + p.horizon + 1);
  if (dim == 0) dim = 1;
  if (rd != 0 && dim != rd) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "operator demands window %zu, got %zu", rd, dim);
    throw ValidationError(buf);
  }
  if (support > dim) throw ValidationError("input extends past the window");
  return dim;
}

// Shared checkpoint bookkeeping for sequence runs.
struct SeqRecorder {
  ErgodicTrace& t;
  const EvolveParams& p;

  void record(std::size_t n, std::span<const cplx> avg, double lost) {
    t.steps.push_back(n);
    std::vector<double> row;
    row.reserve(p.norms.size());
    for (const auto& spec : p.norms) row.push_back(space_norm(spec, avg));
    t.norms.push_back(std::move(row));
    std::vector<cplx> crow;
    crow.reserve(p.coords.size());
    for (std::size_t idx : p.coords)
      crow.push_back(idx >= 1 && idx <= avg.size() ? avg[idx - 1] : cplx(0.0));
    t.coords.push_back(std::move(crow));
    t.lost_mass.push_back(lost);
    t.snapshots.emplace_back(n, std::vector<cplx>(avg.begin(), avg.end()));
    if (t.snapshots.size() > kDetectWindow) t.snapshots.erase(t.snapshots.begin());
  }
};

// The shift average has a closed form through prefix sums, so checkpoints can
// be produced directly instead of stepping the window once per n. Matches the
// generic loop to rounding (the summation order differs).
ErgodicTrace evolve_shift_fast(const Seq& x, const EvolveParams& p, std::size_t dim) {
  ErgodicTrace t;
  t.horizon = p.horizon;
  t.dim = dim;
  for (const auto& s : p.norms) t.norm_labels.push_back(s.label());
  t.coord_indices = p.coords;

  const auto& vals = x.values();
  const std::size_t s = vals.size();
  std::vector<cplx> prefix(s + 1, cplx(0.0));
  for (std::size_t i = 0; i < s; ++i) prefix[i + 1] = prefix[i] + vals[i];
  std::vector<double> qsuffix(s + 2, 0.0);
  for (std::size_t i = s; i >= 1; --i) qsuffix[i] = qsuffix[i + 1] + std::abs(vals[i - 1]);

  auto pc = [&](std::size_t j) { return prefix[std::min(j, s)]; };
  auto lost_at = [&](std::size_t n) {
    if (n == 0) return 0.0;
    std::size_t j = (dim >= n) ? dim - n + 1 : std::size_t{1};
    j = std::min(j, s + 1);
    return qsuffix[j];
  };
  // out[m-1] = sum_{k<=n} (S^k x)_m = x_{max(1,m-n)} + ... + x_m
  auto fill_sum = [&](std::size_t n, std::vector<cplx>& out) {
    out.resize(dim);
    for (std::size_t m = 1; m <= dim; ++m) {
      const std::size_t lo = (m > n) ? m - n : std::size_t{1};
      out[m - 1] = pc(m) - pc(lo - 1);
    }
  };

  const auto schedule = checkpoint_schedule(p.horizon, p.extra_checkpoints);
  SeqRecorder rec{t, p};
  std::vector<cplx> buf;
  for (std::size_t n : schedule) {
    fill_sum(n, buf);
    kernels::scale(buf.data(), buf.data(), 1.0 / double(n + 1), dim);
    rec.record(n, buf, lost_at(n));
  }
  t.final_average = std::move(buf);

  const std::size_t h0 = p.horizon / 2;
  std::vector<cplx> sh, sh0;
  fill_sum(p.horizon, sh);
  fill_sum(h0, sh0);
  t.pt_estimate.resize(dim);
  const double w = double(p.horizon - h0);
  for (std::size_t i = 0; i < dim; ++i) t.pt_estimate[i] = (sh[i] - sh0[i]) / w;
  return t;
}

ErgodicTrace evolve_seq_generic(const DsOp& op, const Seq& x, const EvolveParams& p,
                                std::size_t dim) {
  ErgodicTrace t;
  t.horizon = p.horizon;
  t.dim = dim;
  for (const auto& s : p.norms) t.norm_labels.push_back(s.label());
  t.coord_indices = p.coords;

  std::vector<cplx> state(dim, cplx(0.0));
  std::copy(x.values().begin(), x.values().end(), state.begin());
  std::vector<cplx> scratch(dim);
  std::vector<cplx> sum = state;
  const std::size_t h0 = p.horizon / 2;
  std::vector<cplx> sum_h0;
  if (h0 == 0) sum_h0 = sum;
  double lost = 0.0;

  const auto schedule = checkpoint_schedule(p.horizon, p.extra_checkpoints);
  SeqRecorder rec{t, p};
  std::vector<cplx> avg(dim);
  std::size_t n = 0;
  for (std::size_t cp : schedule) {
    while (n < cp) {
      lost += op.step_seq(state, scratch);
      kernels::acc_add(sum.data(), state.data(), dim);
      ++n;
      if (n == h0) sum_h0 = sum;
    }
    kernels::scale(avg.data(), sum.data(), 1.0 / double(n + 1), dim);
    rec.record(n, avg, lost);
  }
  t.final_average = avg;
  t.pt_estimate.resize(dim);
  const double w = double(p.horizon - h0);
  for (std::size_t i = 0; i < dim; ++i) t.pt_estimate[i] = (sum[i] - sum_h0[i]) / w;
  return t;
}

}  // namespace

std::vector<std::size_t> checkpoint_schedule(std::size_t horizon,
                                             std::span<const std::size_t> extras) {
  std::set<std::size_t> pts;
  for (std::size_t n = 0; n <= std::min<std::size_t>(16, horizon); ++n) pts.insert(n);
  for (double g = 24.0; g < double(horizon); g *= 1.5)
    pts.insert(std::size_t(std::llround(g)));
  for (std::size_t e : extras)
    if (e <= horizon) pts.insert(e);
  pts.insert(horizon);
  return {pts.begin(), pts.end()};
}

ErgodicTrace evolve(const DsOp& op, const Seq& x, const EvolveParams& params) {
  if (op.domain() == OpDomain::Matrix)
    throw ValidationError(op.describe() + " does not act on sequence windows");
  if (params.horizon == 0) throw ValidationError("horizon must be positive");
  const std::size_t dim = resolve_evolve_dim(op, x.support(), params);
  if (op.kind() == OpKind::Shift) return evolve_shift_fast(x, params, dim);
  return evolve_seq_generic(op, x, params, dim);
}

MatrixTrace evolve(const DsOp& op, const MatrixOp& x, const EvolveParams& params) {
  if (op.domain() == OpDomain::Sequence)
    throw ValidationError(op.describe() + " does not act on matrices");
  if (params.horizon == 0) throw ValidationError("horizon must be positive");
  if (params.dim != 0 && params.dim != std::size_t(x.dim()))
    throw ValidationError("matrix runs take their dimension from the input");
  const std::size_t rd = op.required_dim();
  if (rd != 0 && rd != std::size_t(x.dim()))
    throw ValidationError("operator demands a different matrix dimension");

  MatrixTrace t;
  t.horizon = params.horizon;
  t.dim = x.dim();
  for (const auto& s : params.norms) t.norm_labels.push_back(s.label());

  MatrixOp::Dense y = x.mat();
  MatrixOp::Dense sum = x.mat();
  const std::size_t h0 = params.horizon / 2;
  MatrixOp::Dense sum_h0;
  if (h0 == 0) sum_h0 = sum;
  double lost = 0.0;

  const auto schedule = checkpoint_schedule(params.horizon, params.extra_checkpoints);
  MatrixOp::Dense avg;
  std::size_t n = 0;
  for (std::size_t cp : schedule) {
    while (n < cp) {
      lost += op.step_mat(y);
      sum += y;
      ++n;
      if (n == h0) sum_h0 = sum;
    }
    avg = sum * (1.0 / double(n + 1));
    t.steps.push_back(n);
    std::vector<double> row;
    row.reserve(params.norms.size());
    if (!params.norms.empty()) {
      const MatrixOp wrapped(avg);
      for (const auto& spec : params.norms) row.push_back(ideal_norm(spec, wrapped));
    }
    t.norms.push_back(std::move(row));
    t.lost_mass.push_back(lost);
    t.snapshots.emplace_back(n, avg);
    if (t.snapshots.size() > kDetectWindow) t.snapshots.erase(t.snapshots.begin());
  }
  t.final_average = avg;
  t.pt_estimate = (sum - sum_h0) * (1.0 / double(params.horizon - h0));
  return t;
}

namespace {

// Window checks shared by both detectors. Returns the index of the first
// snapshot to use, or npos when a verdict is already settled (too few
// checkpoints or too narrow a span).
template <typename Trace>
std::size_t window_start(const Trace& trace, std::size_t window, Verdict& v) {
  constexpr std::size_t npos = std::size_t(-1);
  if (window < 2) throw ValidationError("detection window must have at least two checkpoints");
  if (window > kDetectWindow)
    throw ValidationError("detection window exceeds the retained checkpoint ring");
  if (trace.snapshots.size() < window) {
    v.achieved_tol = kInf;
    v.note = "too few checkpoints for a verdict";
    return npos;
  }
  const std::size_t first = trace.snapshots.size() - window;
  const double lo = double(std::max<std::size_t>(1, trace.snapshots[first].first));
  const double span = double(trace.snapshots.back().first) / lo;
  if (span < kDetectSpan) {
    v.achieved_tol = kInf;
    v.note = "trailing checkpoint window spans too little of the run";
    return npos;
  }
  return first;
}

void settle(Verdict& v, double worst, double tol, double limit_norm) {
  v.achieved_tol = worst;
  if (worst < tol) {
    v.status = VerdictStatus::Converged;
    v.limit_norm = limit_norm;
    v.note = "trailing averages form a Cauchy window";
  } else {
    char buf[128];
    std::snprintf(buf, sizeof buf, "averages still move: worst trailing gap %.3g at tolerance %.3g",
                  worst, tol);
    v.note = buf;
  }
}

}  // namespace

Verdict detect_convergence(const ErgodicTrace& trace, const SpaceSpec& spec, double tol,
                           std::size_t window) {
  Verdict v;
  const std::size_t first = window_start(trace, window, v);
  if (first == std::size_t(-1)) return v;
  const auto& snaps = trace.snapshots;
  std::vector<cplx> diff(trace.dim);
  double worst = 0.0;
  for (std::size_t i = first; i < snaps.size(); ++i) {
    for (std::size_t j = i + 1; j < snaps.size(); ++j) {
      std::copy(snaps[i].second.begin(), snaps[i].second.end(), diff.begin());
      kernels::axpy(diff.data(), snaps[j].second.data(), -1.0, trace.dim);
      worst = std::max(worst, space_norm(spec, std::span<const cplx>(diff)));
    }
  }
  settle(v, worst, tol, space_norm(spec, std::span<const cplx>(trace.final_average)));
  return v;
}

Verdict detect_convergence(const MatrixTrace& trace, const SpaceSpec& spec, double tol,
                           std::size_t window) {
  Verdict v;
  const std::size_t first = window_start(trace, window, v);
  if (first == std::size_t(-1)) return v;
  const auto& snaps = trace.snapshots;
  double worst = 0.0;
  for (std::size_t i = first; i < snaps.size(); ++i) {
    for (std::size_t j = i + 1; j < snaps.size(); ++j) {
      const MatrixOp::Dense diff = snaps[i].second - snaps[j].second;
      worst = std::max(worst, ideal_norm(spec, MatrixOp(diff)));
    }
  }
  settle(v, worst, tol, ideal_norm(spec, MatrixOp(trace.final_average)));
  return v;
}

Seq estimate_pt(const DsOp& op, const Seq& x, std::size_t horizon, std::size_t dim,
                double detect_tol) {
  EvolveParams p;
  p.horizon = horizon;
  p.dim = dim;
  const ErgodicTrace trace = evolve(op, x, p);
  const Verdict v = detect_convergence(trace, SpaceSpec::c0(), detect_tol);
  if (v.status != VerdictStatus::Converged)
    throw InconclusiveError("averages did not settle by the horizon; " + v.note, v.achieved_tol,
                            horizon);
  Seq xhat{std::vector<cplx>(trace.pt_estimate)};
  const double sup_in = lp_norm(kInf, x.span());
  if (lp_norm(kInf, xhat.span()) > sup_in + kTolSvd * std::max(1.0, sup_in))
    throw ValidationError("projection estimate violates the sup-norm contract");
  const double l1_in = lp_norm(1.0, x.span());
  if (!hlp_leq(xhat, x, kTolSvd * std::max(1.0, l1_in)))
    throw ValidationError("projection estimate escapes the submajorization cone");
  return xhat;
}

MatrixOp estimate_pt(const DsOp& op, const MatrixOp& x, std::size_t horizon, double detect_tol) {
  EvolveParams p;
  p.horizon = horizon;
  const MatrixTrace trace = evolve(op, x, p);
  const Verdict v = detect_convergence(trace, SpaceSpec::c0(), detect_tol);
  if (v.status != VerdictStatus::Converged)
    throw InconclusiveError("averages did not settle by the horizon; " + v.note, v.achieved_tol,
                            horizon);
  MatrixOp xhat(trace.pt_estimate);
  const double sup_in = op_norm_inf(x);
  if (op_norm_inf(xhat) > sup_in + kTolSvd * std::max(1.0, sup_in))
    throw ValidationError("projection estimate violates the operator-norm contract");
  if (!op_hlp_leq(xhat, x, kTolSvd * std::max(1.0, trace_norm(x))))
    throw ValidationError("projection estimate escapes the submajorization cone");
  return xhat;
}

double PtReport::worst() const {
  return std::max(std::max(pt_of_t, t_of_pt), std::max(power_fix, idem));
}

PtReport verify_pt_identities(const DsOp& op, const MatrixOp& x, std::size_t horizon,
                              double detect_tol) {
  const MatrixOp xhat = estimate_pt(op, x, horizon, detect_tol);
  const MatrixOp yhat = estimate_pt(op, apply(op, x), horizon, detect_tol);
  const MatrixOp zhat = estimate_pt(op, xhat, horizon, detect_tol);
  auto gap = [](const MatrixOp& a, const MatrixOp& b) {
    return op_norm_inf(add(a, scale(b, cplx(-1.0))));
  };
  PtReport r;
  r.pt_of_t = gap(yhat, xhat);
  MatrixOp y = xhat;
  for (int k = 1; k <= 4; ++k) {
    y = apply(op, y);
    const double d = gap(y, xhat);
    if (k == 1) r.t_of_pt = d;
    r.power_fix = std::max(r.power_fix, d);
  }
  r.idem = gap(zhat, xhat);
  return r;
}

}  // namespace cesaro
