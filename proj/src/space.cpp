#include "cesaro/space.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "cesaro/kernels.hpp"

namespace cesaro {

namespace {

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void require_lp_exponent(double p) {
  if (std::isinf(p) && p > 0) return;
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ValidationError("lp exponent must satisfy p >= 1 (or be inf)");
}

}  // namespace

SpaceSpec SpaceSpec::lp(double p) {
  require_lp_exponent(p);
  SpaceSpec s;
  s.kind = SpaceKind::Lp;
  s.p = p;
  return s;
}

SpaceSpec SpaceSpec::c0() {
  SpaceSpec s;
  s.kind = SpaceKind::C0;
  return s;
}

SpaceSpec SpaceSpec::orlicz(std::shared_ptr<const OrliczFunction> phi) {
  if (!phi) throw ValidationError("orlicz space needs a function");
  SpaceSpec s;
  s.kind = SpaceKind::Orlicz;
  s.phi = std::move(phi);
  return s;
}

SpaceSpec SpaceSpec::lorentz(std::shared_ptr<const ConcaveWeight> psi) {
  if (!psi) throw ValidationError("lorentz space needs a weight");
  SpaceSpec s;
  s.kind = SpaceKind::Lorentz;
  s.psi = std::move(psi);
  return s;
}

SpaceSpec SpaceSpec::marcinkiewicz(std::shared_ptr<const ConcaveWeight> psi) {
  if (!psi) throw ValidationError("marcinkiewicz space needs a weight");
  SpaceSpec s;
  s.kind = SpaceKind::Marcinkiewicz;
  s.psi = std::move(psi);
  return s;
}

std::string SpaceSpec::label() const {
  switch (kind) {
    case SpaceKind::Lp:
      return std::isinf(p) ? "linf" : "lp:" + fmt_g(p);
    case SpaceKind::C0:
      return "c0";
    case SpaceKind::Orlicz:
      return "orlicz:" + phi->name();
    case SpaceKind::Lorentz:
      return "lorentz:" + psi->name();
    case SpaceKind::Marcinkiewicz:
      return "marcinkiewicz:" + psi->name();
  }
  return "?";
}

SpaceSpec parse_space(const std::string& text) {
  if (text == "c0") return SpaceSpec::c0();
  if (text == "linf") return SpaceSpec::lp(std::numeric_limits<double>::infinity());
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "lp") {
    if (rest == "inf") return SpaceSpec::lp(std::numeric_limits<double>::infinity());
    try {
      return SpaceSpec::lp(std::stod(rest));
    } catch (const std::invalid_argument&) {
      throw ValidationError("bad lp exponent '" + rest + "'");
    }
  }
  if (head == "orlicz") return SpaceSpec::orlicz(OrliczFunction::named(rest));
  if (head == "lorentz") return SpaceSpec::lorentz(ConcaveWeight::named(rest));
  if (head == "marcinkiewicz") return SpaceSpec::marcinkiewicz(ConcaveWeight::named(rest));
  throw ValidationError("unknown space descriptor '" + text + "'");
}

double lp_norm(double p, std::span<const cplx> x) {
  require_lp_exponent(p);
  const auto& k = kernels::active();
  const std::size_t n = x.size();
  if (n == 0) return 0.0;
  if (std::isinf(p)) return kernels::max_abs_c(x.data(), n);
  if (p == 1.0) return k.sum_abs_c(x.data(), n);
  if (p == 2.0)
    return std::sqrt(k.sum_sq(reinterpret_cast<const double*>(x.data()), 2 * n));
  std::vector<double> m(n);
  k.modulus(x.data(), m.data(), n);
  const double mx = k.max(m.data(), n);
  if (mx == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : m) acc += std::pow(v / mx, p);
  return mx * std::pow(acc, 1.0 / p);
}

namespace {

double lp_norm_real(double p, std::span<const double> m) {
  const auto& k = kernels::active();
  const std::size_t n = m.size();
  if (n == 0) return 0.0;
  if (std::isinf(p)) return k.max(m.data(), n);
  if (p == 1.0) return k.sum(m.data(), n);
  if (p == 2.0) return std::sqrt(k.sum_sq(m.data(), n));
  const double mx = k.max(m.data(), n);
  if (mx == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : m) acc += std::pow(v / mx, p);
  return mx * std::pow(acc, 1.0 / p);
}

double lorentz_of_rearrangement(const ConcaveWeight& psi, const Rearrangement& r) {
  const std::size_t n = r.size();
  std::vector<double> inc(n);
  for (std::size_t i = 1; i <= n; ++i) inc[i - 1] = psi.increment(i);
  return kernels::active().dot(r.values.data(), inc.data(), n);
}

double marcinkiewicz_of_rearrangement(const ConcaveWeight& psi, const Rearrangement& r) {
  // sup over n of prefix(n) / psi(n); beyond the support the prefix is
  // constant and psi nondecreasing, so the head suffices.
  double prefix = 0.0, best = 0.0;
  for (std::size_t i = 1; i <= r.size(); ++i) {
    prefix += r.values[i - 1];
    best = std::max(best, prefix / psi(static_cast<double>(i)));
  }
  return best;
}

}  // namespace

double lorentz_norm(const ConcaveWeight& psi, std::span<const cplx> x) {
  return lorentz_of_rearrangement(psi, rearrange(x));
}

double marcinkiewicz_norm(const ConcaveWeight& psi, std::span<const cplx> x) {
  return marcinkiewicz_of_rearrangement(psi, rearrange(x));
}

double space_norm(const SpaceSpec& spec, std::span<const cplx> x) {
  switch (spec.kind) {
    case SpaceKind::Lp:
      return lp_norm(spec.p, x);
    case SpaceKind::C0:
      return x.empty() ? 0.0 : kernels::max_abs_c(x.data(), x.size());
    case SpaceKind::Orlicz:
      return luxemburg_norm(*spec.phi, x);
    case SpaceKind::Lorentz:
      return lorentz_norm(*spec.psi, x);
    case SpaceKind::Marcinkiewicz:
      return marcinkiewicz_norm(*spec.psi, x);
  }
  throw ValidationError("bad space kind");
}

double space_norm(const SpaceSpec& spec, const Seq& x) { return space_norm(spec, x.span()); }

double space_norm_real(const SpaceSpec& spec, std::span<const double> moduli) {
  for (double v : moduli)
    if (!(v >= 0.0)) throw ValidationError("space_norm_real: moduli must be nonnegative");
  switch (spec.kind) {
    case SpaceKind::Lp:
      return lp_norm_real(spec.p, moduli);
    case SpaceKind::C0:
      return moduli.empty() ? 0.0 : kernels::active().max(moduli.data(), moduli.size());
    case SpaceKind::Orlicz:
      return luxemburg_norm_real(*spec.phi, moduli);
    case SpaceKind::Lorentz:
      return lorentz_of_rearrangement(*spec.psi, rearrange_real(moduli));
    case SpaceKind::Marcinkiewicz:
      return marcinkiewicz_of_rearrangement(*spec.psi, rearrange_real(moduli));
  }
  throw ValidationError("bad space kind");
}

double unit_norm(const SpaceSpec& spec) {
  const double one[1] = {1.0};
  return space_norm_real(spec, one);
}

Classification classify(const SpaceSpec& spec) {
  Classification c;
  c.iet = true;
  switch (spec.kind) {
    case SpaceKind::Lp: {
      if (std::isinf(spec.p))
        throw ValidationError("classify: lp:inf is not inside c0, use c0 instead");
      c.separable = true;
      c.equals_l1 = spec.p == 1.0;
      c.evidence.push_back("lp with finite exponent p=" + fmt_g(spec.p) + ": separable");
      c.evidence.push_back(c.equals_l1 ? "p = 1: this is l1" : "p != 1: distinct from l1");
      break;
    }
    case SpaceKind::C0: {
      c.separable = true;
      c.equals_l1 = false;
      c.evidence.push_back("c0 with the sup norm: separable, distinct from l1");
      break;
    }
    case SpaceKind::Orlicz: {
      const Delta2Report d2 = orlicz_delta2_at_zero(*spec.phi);
      const EqualsL1Report l1 = orlicz_equals_l1(*spec.phi);
      c.separable = d2.holds;
      c.equals_l1 = l1.equals;
      c.evidence.push_back("doubling at 0: sup phi(2u)/phi(u) = " + fmt_g(d2.sup_ratio) +
                           " at u = " + fmt_g(d2.worst_u) + (d2.holds ? " (holds)" : " (fails)"));
      c.evidence.push_back("phi(u)/u -> " + fmt_g(l1.limit_estimate) + " at the smallest probe" +
                           (l1.equals ? ": bounded away from 0, space is l1"
                                      : ": vanishes, space is strictly larger than l1"));
      break;
    }
    case SpaceKind::Lorentz: {
      const WeightProbes& pr = spec.psi->probes();
      if (!pr.unbounded)
        throw ValidationError(
            "classify: bounded lorentz weight admits every bounded sequence; not inside c0");
      c.separable = pr.plus0_zero && pr.unbounded;
      c.equals_l1 = !pr.ratio_inf_zero;
      c.evidence.push_back(std::string("psi(+0) ~ ") + fmt_g(pr.plus0_estimate) +
                           (pr.plus0_zero ? " (vanishes)" : " (positive jump)"));
      c.evidence.push_back("psi unbounded on the probe ladder");
      c.evidence.push_back("psi(t)/t -> " + fmt_g(pr.ratio_inf_estimate) + " at t = 2^60" +
                           (c.equals_l1 ? ": stays positive, norm equivalent to l1"
                                        : ": vanishes, space strictly larger than l1"));
      break;
    }
    case SpaceKind::Marcinkiewicz: {
      const WeightProbes& pr = spec.psi->probes();
      if (!pr.ratio_inf_zero)
        throw ValidationError(
            "classify: marcinkiewicz weight with psi(t)/t not vanishing at infinity admits the "
            "constant sequence; not inside c0");
      c.equals_l1 = !pr.unbounded;
      c.separable = c.equals_l1;
      if (c.equals_l1) {
        c.evidence.push_back("psi bounded (last doubling increment ~0): space is l1 with an "
                             "equivalent norm, separable");
      } else {
        c.evidence.push_back("psi unbounded: the tail of the canonical witness keeps norm ~1, "
                             "space is non-separable");
        c.evidence.push_back(std::string("psi(+0) ~ ") + fmt_g(pr.plus0_estimate) +
                             ", psi(t)/t at 0+ ~ " + fmt_g(pr.ratio_zero_estimate) +
                             " (informational)");
      }
      break;
    }
  }
  c.met = c.separable && !c.equals_l1;
  c.evidence.push_back(c.met ? "separable and distinct from l1: mean ergodic averaging converges "
                               "in the ideal norm"
                             : "mean ergodic averaging can fail in the ideal norm");
  c.evidence.push_back("inside the compacts: uniform averaging converges for every member");
  return c;
}

}  // namespace cesaro
