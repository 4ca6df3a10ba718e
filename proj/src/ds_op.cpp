#include "cesaro/ds_op.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "cesaro/kernels.hpp"
#include "cesaro/singular.hpp"
#include "cesaro/space.hpp"

namespace cesaro {

namespace {

void require_real_nonneg(const Seq& xi, const char* what) {
  for (const cplx& v : xi.values()) {
    if (v.imag() != 0.0 || v.real() < 0.0)
      throw ValidationError(std::string(what) + " must be real and nonnegative");
  }
}

class IdentityOp final : public DsOp {
 public:
  OpKind kind() const override { return OpKind::Identity; }
  OpDomain domain() const override { return OpDomain::Any; }
  std::string describe() const override { return "identity"; }
  double step_seq(std::vector<cplx>&, std::vector<cplx>&) const override { return 0.0; }
  double step_mat(MatrixOp::Dense&) const override { return 0.0; }
};

class ShiftOp final : public DsOp {
 public:
  OpKind kind() const override { return OpKind::Shift; }
  OpDomain domain() const override { return OpDomain::Sequence; }
  std::string describe() const override { return "shift"; }
  double step_seq(std::vector<cplx>& state, std::vector<cplx>&) const override {
    if (state.empty()) return 0.0;
    const double lost = std::abs(state.back());
    std::move_backward(state.begin(), state.end() - 1, state.end());
    state.front() = cplx(0.0);
    return lost;
  }
};

class SignPermOp final : public DsOp {
 public:
  explicit SignPermOp(SignPermTables t) : tables_(std::move(t)) {}
  OpKind kind() const override { return OpKind::SignPerm; }
  OpDomain domain() const override { return OpDomain::Sequence; }
  std::string describe() const override {
    char buf[96];
    std::snprintf(buf, sizeof buf, "sign-perm(dim=%zu, band=%zu, breaks=%zu)", tables_.dim(),
                  tables_.g.size(), tables_.breakpoints().size());
    return buf;
  }
  std::size_t required_dim() const override { return tables_.dim(); }
  double step_seq(std::vector<cplx>& state, std::vector<cplx>& scratch) const override {
    const std::size_t n = tables_.dim();
    if (state.size() != n || scratch.size() != n)
      throw ValidationError("sign-perm window size mismatch");
    for (std::size_t m = 0; m < n; ++m) {
      const int s = tables_.phi[m];
      if (s == 0) {
        scratch[m] = cplx(0.0);
        continue;
      }
      const std::uint32_t j = tables_.pi[m];
      scratch[m] = (j > n) ? cplx(0.0) : double(s) * state[j - 1];
    }
    state.swap(scratch);
    return 0.0;
  }
  const SignPermTables* tables() const override { return &tables_; }

 private:
  SignPermTables tables_;
};

class DiagLiftOp final : public DsOp {
 public:
  explicit DiagLiftOp(DsOpPtr inner) : inner_(std::move(inner)) {}
  OpKind kind() const override { return OpKind::DiagLift; }
  OpDomain domain() const override { return OpDomain::Matrix; }
  std::string describe() const override { return "diag-lift(" + inner_->describe() + ")"; }
  std::size_t required_dim() const override { return inner_->required_dim(); }
  double step_mat(MatrixOp::Dense& y) const override {
    const std::size_t n = std::size_t(y.rows());
    std::vector<cplx> state(n), scratch(n);
    for (std::size_t i = 0; i < n; ++i) state[i] = y(Eigen::Index(i), Eigen::Index(i));
    const double lost = inner_->step_seq(state, scratch);
    y.setZero();
    for (std::size_t i = 0; i < n; ++i) y(Eigen::Index(i), Eigen::Index(i)) = state[i];
    return lost;
  }
  DsOpPtr inner() const override { return inner_; }

 private:
  DsOpPtr inner_;
};

class ConjugationOp final : public DsOp {
 public:
  ConjugationOp(MatrixOp p, DsOpPtr inner) : p_(std::move(p)), inner_(std::move(inner)) {}
  OpKind kind() const override { return OpKind::Conjugation; }
  OpDomain domain() const override { return OpDomain::Matrix; }
  std::string describe() const override {
    const long rank = std::lround(p_.mat().diagonal().real().sum());
    char buf[64];
    std::snprintf(buf, sizeof buf, "conjugation(rank=%ld)", rank);
    std::string out = buf;
    if (inner_) out += " after " + inner_->describe();
    return out;
  }
  std::size_t required_dim() const override { return p_.dim(); }
  double step_mat(MatrixOp::Dense& y) const override {
    if (y.rows() != p_.dim())
      throw ValidationError("conjugation dimension mismatch");
    y = p_.mat() * y * p_.mat();
    return inner_ ? inner_->step_mat(y) : 0.0;
  }
  const MatrixOp* projection() const override { return &p_; }
  DsOpPtr inner() const override { return inner_; }

 private:
  MatrixOp p_;
  DsOpPtr inner_;
};

class ComposeOp final : public DsOp {
 public:
  ComposeOp(std::vector<DsOpPtr> parts, OpDomain dom, std::size_t rd)
      : parts_(std::move(parts)), domain_(dom), required_(rd) {}
  OpKind kind() const override { return OpKind::Compose; }
  OpDomain domain() const override { return domain_; }
  std::string describe() const override {
    std::string out = "compose(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ", ";
      out += parts_[i]->describe();
    }
    return out + ")";
  }
  std::size_t required_dim() const override { return required_; }
  double step_seq(std::vector<cplx>& state, std::vector<cplx>& scratch) const override {
    if (domain_ == OpDomain::Matrix) return DsOp::step_seq(state, scratch);
    double lost = 0.0;
    for (const auto& p : parts_) lost += p->step_seq(state, scratch);
    return lost;
  }
  double step_mat(MatrixOp::Dense& y) const override {
    if (domain_ == OpDomain::Sequence) return DsOp::step_mat(y);
    double lost = 0.0;
    for (const auto& p : parts_) lost += p->step_mat(y);
    return lost;
  }
  std::span<const DsOpPtr> parts() const override { return parts_; }

 private:
  std::vector<DsOpPtr> parts_;
  OpDomain domain_;
  std::size_t required_;
};

std::size_t resolve_dim(const DsOp& op, std::size_t dim, std::size_t support) {
  const std::size_t rd = op.required_dim();
  const std::size_t resolved = dim ? dim : (rd ? rd : std::max<std::size_t>(1, support));
  if (rd != 0 && resolved != rd) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "operator demands window %zu, got %zu", rd, resolved);
    throw ValidationError(buf);
  }
  if (support > resolved) throw ValidationError("input extends past the window");
  return resolved;
}

std::vector<cplx> window_of(const Seq& x, std::size_t dim) {
  std::vector<cplx> state(dim, cplx(0.0));
  std::copy(x.values().begin(), x.values().end(), state.begin());
  return state;
}

}  // namespace

double DsOp::step_seq(std::vector<cplx>&, std::vector<cplx>&) const {
  throw ValidationError(describe() + " does not act on sequence windows");
}

double DsOp::step_mat(MatrixOp::Dense&) const {
  throw ValidationError(describe() + " does not act on matrices");
}

DsOpPtr DsOp::identity() { return std::make_shared<IdentityOp>(); }

DsOpPtr DsOp::shift() { return std::make_shared<ShiftOp>(); }

DsOpPtr DsOp::sign_perm(SignPermTables tables) {
  const std::size_t n = tables.phi.size();
  if (n == 0 || tables.pi.size() != n)
    throw ValidationError("sign-perm tables need matching nonzero phi/pi sizes");
  if (tables.g.empty()) throw ValidationError("sign-perm tables have an empty band");
  std::vector<char> on(n, 0);
  std::uint32_t prev = 0;
  for (std::uint32_t m : tables.g) {
    if (m == 0 || m > n || m <= prev)
      throw ValidationError("sign-perm band must be strictly increasing within the window");
    on[m - 1] = 1;
    prev = m;
  }
  for (std::size_t m = 1; m <= n; ++m) {
    const int s = tables.phi[m - 1];
    if (on[m - 1]) {
      if (s != 1 && s != -1) throw ValidationError("phi must be +-1 on the band");
    } else {
      if (s != 0) throw ValidationError("phi must vanish off the band");
      if (tables.pi[m - 1] != m) throw ValidationError("pi must fix indices off the band");
    }
  }
  for (std::size_t i = 0; i < tables.g.size(); ++i) {
    const std::uint32_t expect =
        (i + 1 < tables.g.size()) ? tables.g[i + 1] : std::uint32_t(n + 1);
    if (tables.pi[tables.g[i] - 1] != expect)
      throw ValidationError("pi must advance along the band");
  }
  return std::make_shared<SignPermOp>(std::move(tables));
}

DsOpPtr DsOp::diag_lift(DsOpPtr inner) {
  if (!inner) throw ValidationError("diagonal lift needs an inner operator");
  if (inner->domain() == OpDomain::Matrix)
    throw ValidationError("diagonal lift needs a sequence operator inside");
  return std::make_shared<DiagLiftOp>(std::move(inner));
}

DsOpPtr DsOp::conjugation(MatrixOp projection, DsOpPtr inner) {
  const auto& p = projection.mat();
  const double herm = (p - p.adjoint()).cwiseAbs().maxCoeff();
  const double idem = (p * p - p).cwiseAbs().maxCoeff();
  if (herm > kTolSvd || idem > kTolSvd)
    throw ValidationError("conjugation needs a self-adjoint idempotent projection");
  if (inner) {
    if (inner->domain() == OpDomain::Sequence)
      throw ValidationError("conjugation inner operator must act on matrices");
    const std::size_t rd = inner->required_dim();
    if (rd != 0 && rd != std::size_t(projection.dim()))
      throw ValidationError("conjugation inner operator demands a different dimension");
  }
  return std::make_shared<ConjugationOp>(std::move(projection), std::move(inner));
}

DsOpPtr DsOp::compose(std::vector<DsOpPtr> parts) {
  if (parts.empty()) return identity();
  OpDomain dom = OpDomain::Any;
  std::size_t rd = 0;
  for (const auto& p : parts) {
    if (!p) throw ValidationError("composition parts must be non-null");
    const OpDomain d = p->domain();
    if (d != OpDomain::Any) {
      if (dom == OpDomain::Any) {
        dom = d;
      } else if (dom != d) {
        throw ValidationError("composition mixes sequence and matrix operators");
      }
    }
    const std::size_t r = p->required_dim();
    if (r != 0) {
      if (rd == 0) {
        rd = r;
      } else if (rd != r) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "composition parts demand different sizes (%zu vs %zu)",
                      rd, r);
        throw ValidationError(buf);
      }
    }
  }
  return std::make_shared<ComposeOp>(std::move(parts), dom, rd);
}

std::vector<std::size_t> SignPermTables::breakpoints() const {
  std::vector<std::size_t> out{1};
  for (std::size_t i = 1; i < g.size(); ++i)
    if (phi[g[i] - 1] == -1) out.push_back(i + 1);
  return out;
}

Applied apply(const DsOp& op, const Seq& x, std::size_t dim) {
  if (op.domain() == OpDomain::Matrix)
    throw ValidationError(op.describe() + " does not act on sequence windows");
  const std::size_t w = resolve_dim(op, dim, x.support());
  std::vector<cplx> state = window_of(x, w);
  std::vector<cplx> scratch(w);
  const double lost = op.step_seq(state, scratch);
  return {Seq(std::move(state)), lost};
}

MatrixOp apply(const DsOp& op, const MatrixOp& x) {
  if (op.domain() == OpDomain::Sequence)
    throw ValidationError(op.describe() + " does not act on matrices");
  const std::size_t rd = op.required_dim();
  if (rd != 0 && rd != std::size_t(x.dim()))
    throw ValidationError("operator demands a different matrix dimension");
  MatrixOp::Dense y = x.mat();
  op.step_mat(y);
  return MatrixOp(std::move(y));
}

Applied cesaro_average(const DsOp& op, const Seq& x, std::size_t n, std::size_t dim) {
  if (op.domain() == OpDomain::Matrix)
    throw ValidationError(op.describe() + " does not act on sequence windows");
  const std::size_t w = resolve_dim(op, dim, x.support());
  std::vector<cplx> state = window_of(x, w);
  std::vector<cplx> scratch(w);
  std::vector<cplx> sum = state;
  double lost = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    lost += op.step_seq(state, scratch);
    kernels::acc_add(sum.data(), state.data(), w);
  }
  kernels::scale(sum.data(), sum.data(), 1.0 / double(n + 1), w);
  return {Seq(std::move(sum)), lost};
}

MatrixOp cesaro_average(const DsOp& op, const MatrixOp& x, std::size_t n) {
  if (op.domain() == OpDomain::Sequence)
    throw ValidationError(op.describe() + " does not act on matrices");
  const std::size_t rd = op.required_dim();
  if (rd != 0 && rd != std::size_t(x.dim()))
    throw ValidationError("operator demands a different matrix dimension");
  MatrixOp::Dense y = x.mat();
  MatrixOp::Dense sum = x.mat();
  for (std::size_t k = 1; k <= n; ++k) {
    op.step_mat(y);
    sum += y;
  }
  sum *= cplx(1.0 / double(n + 1));
  return MatrixOp(std::move(sum));
}

SignPermTables build_sign_perm(const Seq& xi_plus, std::span<const std::size_t> breakpoints,
                               std::size_t dim) {
  require_real_nonneg(xi_plus, "sign-perm input");
  if (dim == 0) throw ValidationError("sign-perm window must be nonempty");
  if (breakpoints.empty() || breakpoints.front() != 1)
    throw ValidationError("breakpoints must start at 1");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (breakpoints[i] <= breakpoints[i - 1])
      throw ValidationError("breakpoints must be strictly increasing");

  SignPermTables t;
  for (std::size_t m = 1; m <= dim; ++m) {
    const double v = xi_plus.at(m).real();
    if (v >= 1.0 && v <= 2.0) t.g.push_back(std::uint32_t(m));
  }
  if (t.g.empty())
    throw ValidationError("no window indices carry values in [1, 2]; rescale the input first");
  if (t.g.size() <= breakpoints.back()) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "band too small: %zu qualifying indices but the last breakpoint is %zu",
                  t.g.size(), breakpoints.back());
    throw ValidationError(buf);
  }

  t.phi.assign(dim, 0);
  t.pi.resize(dim);
  for (std::size_t m = 1; m <= dim; ++m) t.pi[m - 1] = std::uint32_t(m);
  for (std::size_t i = 0; i < t.g.size(); ++i) {
    t.phi[t.g[i] - 1] = 1;
    t.pi[t.g[i] - 1] = (i + 1 < t.g.size()) ? t.g[i + 1] : std::uint32_t(dim + 1);
  }
  for (std::size_t k = 1; k < breakpoints.size(); ++k)
    t.phi[t.g[breakpoints[k] - 1] - 1] = -1;
  return t;
}

GreedyResult greedy_breakpoints(const Seq& xi_plus, std::size_t alternations,
                                std::size_t horizon) {
  require_real_nonneg(xi_plus, "greedy search input");
  if (horizon == 0) throw ValidationError("greedy search needs a positive horizon");
  const Rearrangement r = rearrange(xi_plus);
  if (r.size() == 0) throw ValidationError("greedy search needs a nonzero input");

  GreedyResult out;
  const double tail = r.values.back();
  out.scale = (std::abs(tail - 1.0) <= kTolExact) ? 1.0 : 1.0 / tail;

  // Values in the [1, 2] band after rescaling, in index order; the orbit of
  // the first band member walks along this list one slot per step.
  std::vector<double> band;
  const auto& vals = xi_plus.values();
  for (const cplx& v : vals) {
    const double s = v.real() * out.scale;
    if (s >= 1.0 && s <= 2.0) band.push_back(s);
  }
  if (band.empty()) throw ValidationError("no values land in [1, 2] after rescaling");

  out.breakpoints = {1};
  double run = band[0];  // signed running sum of the replayed orbit
  std::size_t n = 1;     // terms consumed so far
  double sign = 1.0;     // sign the next term enters with
  std::size_t prev = 1;

  for (std::size_t j = 1; j <= alternations; ++j) {
    const bool want_high = (j % 2 == 1);
    for (;;) {
      const double avg = run / double(n);
      // Strict crossings only: a block ending exactly at +-1/2 is extended.
      if (n > prev && (want_high ? avg > 0.5 : avg < -0.5)) {
        out.breakpoints.push_back(n);
        sign = -sign;
        prev = n;
        out.achieved = j;
        break;
      }
      if (n >= horizon || n >= band.size()) return out;
      run += sign * band[n];
      ++n;
    }
  }
  out.complete = true;
  return out;
}

SignPermPlan plan_sign_perm(const Seq& xi_plus, std::size_t alternations, std::size_t horizon,
                            std::size_t dim) {
  SignPermPlan plan;
  plan.greedy = greedy_breakpoints(xi_plus, alternations, horizon);
  plan.xi_scaled =
      (plan.greedy.scale == 1.0) ? xi_plus : scale(xi_plus, cplx(plan.greedy.scale));
  plan.tables = build_sign_perm(plan.xi_scaled, plan.greedy.breakpoints, dim);
  return plan;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(ContractReport& rep, std::size_t i, const char* which, double lhs, double rhs,
                double tol) {
  if (lhs > rhs + tol) rep.violations.push_back({i, which, lhs, rhs});
}

}  // namespace

ContractReport verify_ds_contract(const DsOp& op, std::span<const Seq> samples, std::size_t dim,
                                  double tol) {
  ContractReport rep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Applied out = apply(op, samples[i], dim);
    check_pair(rep, i, "l1", lp_norm(1.0, out.value.span()), lp_norm(1.0, samples[i].span()),
               tol);
    check_pair(rep, i, "linf", lp_norm(kInf, out.value.span()), lp_norm(kInf, samples[i].span()),
               tol);
    ++rep.checked;
  }
  return rep;
}

ContractReport verify_ds_contract(const std::function<Seq(const Seq&)>& op,
                                  std::span<const Seq> samples, double tol) {
  ContractReport rep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Seq out = op(samples[i]);
    check_pair(rep, i, "l1", lp_norm(1.0, out.span()), lp_norm(1.0, samples[i].span()), tol);
    check_pair(rep, i, "linf", lp_norm(kInf, out.span()), lp_norm(kInf, samples[i].span()), tol);
    ++rep.checked;
  }
  return rep;
}

ContractReport verify_ds_contract(const DsOp& op, std::span<const MatrixOp> samples, double tol) {
  ContractReport rep;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const MatrixOp out = apply(op, samples[i]);
    check_pair(rep, i, "trace", trace_norm(out), trace_norm(samples[i]), tol);
    check_pair(rep, i, "op", op_norm_inf(out), op_norm_inf(samples[i]), tol);
    ++rep.checked;
  }
  return rep;
}

}  // namespace cesaro
