#include "cesaro/weight.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cesaro {

ConcaveWeight::ConcaveWeight(std::string name, std::function<double(double)> f)
    : name_(std::move(name)), f_(std::move(f)) {
  if (f_(0.0) != 0.0) throw ValidationError("weight: psi(0) must be 0");
  const double at1 = f_(1.0);
  if (!(at1 > 0.0) || !std::isfinite(at1))
    throw ValidationError("weight: psi(1) must be positive and finite");
  // Increasing with nonincreasing increments on a mixed probe ladder:
  // 1..64 stepwise, then dyadic out to 2^kInfProbeMax.
  double prev_t = 0.0, prev_v = 0.0;
  double prev_rate = HUGE_VAL;
  auto check = [&](double t) {
    const double v = f_(t);
    if (!std::isfinite(v)) throw ValidationError("weight: psi not finite on probe ladder");
    if (v < prev_v * (1.0 - 1e-12) || v < 0.0)
      throw ValidationError("weight: psi must be nondecreasing");
    const double rate = (v - prev_v) / (t - prev_t);
    if (rate > prev_rate * (1.0 + 1e-9) + 1e-300)
      throw ValidationError("weight: psi must be concave (increment rates grew)");
    prev_rate = rate;
    prev_t = t, prev_v = v;
  };
  for (int n = 1; n <= 64; ++n) check(static_cast<double>(n));
  for (int k = 7; k <= kInfProbeMax; ++k) check(std::ldexp(1.0, k));

  const double t_small = std::ldexp(1.0, -kZeroProbeMax);
  probes_.plus0_estimate = f_(t_small);
  probes_.plus0_zero = probes_.plus0_estimate <= kLimitThreshold * at1;
  const double t_big = std::ldexp(1.0, kInfProbeMax - 1);
  probes_.unbounded = (f_(2.0 * t_big) - f_(t_big)) > kWeightIncrementFloor * std::max(at1, 1.0);
  const double t_inf = std::ldexp(1.0, kInfProbeMax);
  probes_.ratio_inf_estimate = f_(t_inf) / t_inf;
  probes_.ratio_inf_zero = probes_.ratio_inf_estimate <= kLimitThreshold;
  probes_.ratio_zero_estimate = f_(t_small) / t_small;
}

double ConcaveWeight::increment(std::size_t n) const {
  if (n == 0) throw ValidationError("weight increment index is 1-based");
  const double t = static_cast<double>(n);
  return f_(t) - f_(t - 1.0);
}

std::shared_ptr<const ConcaveWeight> ConcaveWeight::power(double p) {
  if (!(p > 0.0) || !(p <= 1.0))
    throw ValidationError("weight power exponent must satisfy 0 < p <= 1");
  char tag[48];
  std::snprintf(tag, sizeof tag, "power:%.6g", p);
  std::string name = p == 1.0 ? "linear" : (p == 0.5 ? "sqrt" : tag);
  return std::make_shared<ConcaveWeight>(
      std::move(name), [p](double t) { return t <= 0.0 ? 0.0 : std::pow(t, p); });
}

std::shared_ptr<const ConcaveWeight> ConcaveWeight::sqrt() { return power(0.5); }
std::shared_ptr<const ConcaveWeight> ConcaveWeight::linear() { return power(1.0); }

std::shared_ptr<const ConcaveWeight> ConcaveWeight::log1p() {
  return std::make_shared<ConcaveWeight>("log1p",
                                         [](double t) { return std::log1p(std::max(t, 0.0)); });
}

std::shared_ptr<const ConcaveWeight> ConcaveWeight::exp_decay() {
  return std::make_shared<ConcaveWeight>("exp-decay",
                                         [](double t) { return -std::expm1(-std::max(t, 0.0)); });
}

std::shared_ptr<const ConcaveWeight> ConcaveWeight::table(
    std::vector<std::pair<double, double>> nodes) {
  if (nodes.empty()) throw ValidationError("weight table: no nodes");
  std::sort(nodes.begin(), nodes.end());
  if (!(nodes.front().first > 0.0))
    throw ValidationError("weight table: node abscissae must be positive");
  double prev_t = 0.0, prev_v = 0.0, prev_slope = HUGE_VAL;
  for (const auto& [t, v] : nodes) {
    if (t <= prev_t) throw ValidationError("weight table: duplicate abscissa");
    if (v < prev_v) throw ValidationError("weight table: values must be nondecreasing");
    const double slope = (v - prev_v) / (t - prev_t);
    if (slope > prev_slope * (1.0 + 1e-12))
      throw ValidationError("weight table: slopes must be nonincreasing (concavity)");
    prev_t = t, prev_v = v, prev_slope = slope;
  }
  auto pts = std::make_shared<std::vector<std::pair<double, double>>>(std::move(nodes));
  auto eval = [pts](double t) {
    if (t <= 0.0) return 0.0;
    double t0 = 0.0, v0 = 0.0;
    for (const auto& [tn, vn] : *pts) {
      if (t <= tn) return v0 + (vn - v0) * (t - t0) / (tn - t0);
      t0 = tn, v0 = vn;
    }
    const auto& [t1, v1] = (*pts)[pts->size() - 1];
    double ta = 0.0, va = 0.0;
    if (pts->size() >= 2) {
      ta = (*pts)[pts->size() - 2].first;
      va = (*pts)[pts->size() - 2].second;
    }
    const double slope = (v1 - va) / (t1 - ta);
    return v1 + slope * (t - t1);
  };
  return std::make_shared<ConcaveWeight>("table", std::move(eval));
}

std::shared_ptr<const ConcaveWeight> ConcaveWeight::named(const std::string& spec) {
  if (spec == "sqrt") return sqrt();
  if (spec == "linear") return linear();
  if (spec == "log1p") return log1p();
  if (spec == "exp-decay") return exp_decay();
  if (spec.rfind("power:", 0) == 0) {
    try {
      return power(std::stod(spec.substr(6)));
    } catch (const std::invalid_argument&) {
      throw ValidationError("weight: bad power exponent in '" + spec + "'");
    }
  }
  throw ValidationError("unknown weight function '" + spec + "'");
}

}  // namespace cesaro
