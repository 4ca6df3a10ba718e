#include "cesaro/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "cesaro/kernels.hpp"

namespace cesaro {

namespace {

std::vector<double> dyadic_grid(int k_min, int k_max) {
  // 2^-k_min down to 2^-k_max, strictly decreasing.
  std::vector<double> g;
  for (int k = k_min; k <= k_max; ++k) g.push_back(std::ldexp(1.0, -k));
  return g;
}

}  // namespace

OrliczFunction::OrliczFunction(std::string name, std::function<double(double)> f,
                               std::vector<double> grid)
    : name_(std::move(name)), f_(std::move(f)), grid_(std::move(grid)) {
  if (grid_.empty()) throw ValidationError("orlicz: empty probe grid");
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    if (!(grid_[i] > grid_[i + 1]) || !(grid_[i + 1] > 0.0))
      throw ValidationError("orlicz: probe grid must be strictly decreasing and positive");
  }
  if (f_(0.0) != 0.0) throw ValidationError("orlicz: phi(0) must be 0");
  for (double u : grid_) {
    const double v = f_(u);
    if (!(v > 0.0) || !std::isfinite(v))
      throw ValidationError("orlicz: phi must be positive and finite on the grid");
  }
  // Monotone and midpoint-convex along the grid (ascending order).
  for (std::size_t i = grid_.size(); i-- > 1;) {
    const double a = grid_[i], b = grid_[i - 1];  // a < b
    const double fa = f_(a), fb = f_(b);
    if (fb < fa * (1.0 - 1e-12))
      throw ValidationError("orlicz: phi must be nondecreasing on the grid");
    const double mid = f_(0.5 * (a + b));
    if (mid > 0.5 * (fa + fb) * (1.0 + 1e-12))
      throw ValidationError("orlicz: phi fails midpoint convexity on the grid");
  }
}

std::shared_ptr<const OrliczFunction> OrliczFunction::power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ValidationError("orlicz power exponent must satisfy p >= 1");
  char tag[48];
  std::snprintf(tag, sizeof tag, "power:%.6g", p);
  std::string name = p == 1.0 ? "linear" : tag;
  return std::make_shared<OrliczFunction>(
      std::move(name), [p](double u) { return u <= 0.0 ? 0.0 : std::pow(u, p); },
      dyadic_grid(1, 40));
}

std::shared_ptr<const OrliczFunction> OrliczFunction::linear() { return power(1.0); }

std::shared_ptr<const OrliczFunction> OrliczFunction::exp_decay() {
  // exp(-1/u) underflows to an exact zero near u = 2^-10, so the grid stops
  // at 2^-9; the function is convex on that range.
  return std::make_shared<OrliczFunction>(
      "exp-decay", [](double u) { return u <= 0.0 ? 0.0 : std::exp(-1.0 / u); },
      dyadic_grid(1, 9));
}

std::shared_ptr<const OrliczFunction> OrliczFunction::table(
    std::vector<std::pair<double, double>> nodes) {
  if (nodes.empty()) throw ValidationError("orlicz table: no nodes");
  std::sort(nodes.begin(), nodes.end());
  if (!(nodes.front().first > 0.0))
    throw ValidationError("orlicz table: node abscissae must be positive");
  // Implicit (0, 0) start; slopes must be nondecreasing for convexity.
  double prev_t = 0.0, prev_v = 0.0, prev_slope = 0.0;
  for (const auto& [t, v] : nodes) {
    if (t <= prev_t) throw ValidationError("orlicz table: duplicate abscissa");
    if (v < prev_v) throw ValidationError("orlicz table: values must be nondecreasing");
    const double slope = (v - prev_v) / (t - prev_t);
    if (slope < prev_slope * (1.0 - 1e-12))
      throw ValidationError("orlicz table: slopes must be nondecreasing (convexity)");
    prev_t = t, prev_v = v, prev_slope = slope;
  }
  auto pts = std::make_shared<std::vector<std::pair<double, double>>>(std::move(nodes));
  auto eval = [pts](double u) {
    if (u <= 0.0) return 0.0;
    double t0 = 0.0, v0 = 0.0;
    for (const auto& [t, v] : *pts) {
      if (u <= t) return v0 + (v - v0) * (u - t0) / (t - t0);
      t0 = t, v0 = v;
    }
    const auto& [t1, v1] = (*pts)[pts->size() - 1];
    double ta = 0.0, va = 0.0;
    if (pts->size() >= 2) {
      ta = (*pts)[pts->size() - 2].first;
      va = (*pts)[pts->size() - 2].second;
    }
    const double slope = (v1 - va) / (t1 - ta);
    return v1 + slope * (u - t1);
  };
  // Probe grid: clip the default dyadic grid to where the table is positive.
  std::vector<double> grid;
  for (double u : dyadic_grid(1, 40))
    if (eval(u) > 0.0) grid.push_back(u);
  if (grid.empty()) throw ValidationError("orlicz table: vanishes on the probe grid");
  return std::make_shared<OrliczFunction>("table", std::move(eval), std::move(grid));
}

std::shared_ptr<const OrliczFunction> OrliczFunction::named(const std::string& spec) {
  if (spec == "linear") return linear();
  if (spec == "exp-decay") return exp_decay();
  if (spec.rfind("power:", 0) == 0) {
    try {
      return power(std::stod(spec.substr(6)));
    } catch (const std::invalid_argument&) {
      throw ValidationError("orlicz: bad power exponent in '" + spec + "'");
    }
  }
  throw ValidationError("unknown orlicz function '" + spec + "'");
}

Delta2Report orlicz_delta2_at_zero(const OrliczFunction& phi,
                                   std::span<const double> grid, double ratio_cap) {
  if (grid.empty()) throw ValidationError("delta2: empty grid");
  Delta2Report rep{true, 0.0, grid[0], {}};
  rep.ratios.reserve(grid.size());
  for (double u : grid) {
    const double denom = phi(u);
    if (denom == 0.0) throw ValidationError("delta2: phi vanishes at a grid point");
    const double ratio = phi(2.0 * u) / denom;
    rep.ratios.push_back(ratio);
    if (!std::isfinite(ratio) || ratio > rep.sup_ratio) {
      rep.sup_ratio = ratio;
      rep.worst_u = u;
    }
    if (!std::isfinite(ratio) || ratio > ratio_cap) rep.holds = false;
  }
  return rep;
}

Delta2Report orlicz_delta2_at_zero(const OrliczFunction& phi) {
  return orlicz_delta2_at_zero(phi, phi.probe_grid(), kDelta2Max);
}

EqualsL1Report orlicz_equals_l1(const OrliczFunction& phi) {
  const double u = phi.probe_grid().back();  // smallest probe point
  const double est = phi(u) / u;
  return EqualsL1Report{est > kLimitThreshold, est};
}

namespace {

// Root of phi(t) = target for increasing phi: returns a bracket [lo, hi] with
// phi(lo) < target <= phi(hi).  Fails (returns false) when the target is not
// attained below 1e300.
bool bracket_root(const OrliczFunction& phi, double target, double& lo, double& hi) {
  double u = 1.0;
  if (phi(u) >= target) {
    while (u > 1e-300 && phi(0.5 * u) >= target) u *= 0.5;
    lo = 0.5 * u, hi = u;
    return true;
  }
  while (u < 1e300) {
    const double next = 2.0 * u;
    if (phi(next) >= target) {
      lo = u, hi = next;
      return true;
    }
    u = next;
  }
  return false;
}

void bisect_root(const OrliczFunction& phi, double target, double& lo, double& hi) {
  for (int it = 0; it < 120 && (hi - lo) > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) >= target ? hi : lo) = mid;
  }
}

}  // namespace

double luxemburg_norm_real(const OrliczFunction& phi, std::span<const double> moduli) {
  std::vector<double> m;
  m.reserve(moduli.size());
  double sum = 0.0, mx = 0.0;
  for (double v : moduli) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw ValidationError("luxemburg: moduli must be finite and nonnegative");
    if (v > 0.0) {
      m.push_back(v);
      sum += v;
      if (v > mx) mx = v;
    }
  }
  if (m.empty()) return 0.0;
  const double s = static_cast<double>(m.size());

  const auto g = [&](double a) {
    double acc = 0.0;
    for (double v : m) acc += phi(v / a);
    return acc;
  };

  // Bracket from the roots phi(L) = 1 and phi(U) = 1/s:
  //   g(mx / L_hi) >= phi(L_hi) >= 1,
  //   g(sum / L_lo) <= phi(L_lo) < 1   (convexity, phi(0) = 0),
  //   g(mx / U_lo) <= s * phi(U_lo) < 1.
  double lo = 0.0, hi = 0.0;
  bool have = false;
  double l_lo, l_hi, u_lo, u_hi;
  if (bracket_root(phi, 1.0, l_lo, l_hi) && bracket_root(phi, 1.0 / s, u_lo, u_hi)) {
    bisect_root(phi, 1.0, l_lo, l_hi);
    bisect_root(phi, 1.0 / s, u_lo, u_hi);
    lo = mx / l_hi;
    hi = std::min(sum / l_lo, mx / u_lo);
    have = g(lo) >= 1.0 && g(hi) <= 1.0 && lo <= hi;
  }
  if (!have) {
    // Wide fallback.  A strict g(lo) > 1 is required: if even arbitrarily
    // small a keeps the modular at or below 1, the infimum degenerates to 0
    // and the gauge is not a norm on this input.
    lo = 1e-300, hi = 1e300;
    if (!(g(lo) > 1.0) || !(g(hi) <= 1.0))
      throw ValidationError("luxemburg: bracket failure, phi degenerate on the needed range");
  }

  // Geometric bisection until the bracket is tight in ratio, then arithmetic.
  for (int it = 0; it < 90 && hi / lo > 2.0; ++it) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    (g(mid) > 1.0 ? lo : hi) = mid;
  }
  for (int it = 0; it < 90 && (hi - lo) > 3e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double luxemburg_norm(const OrliczFunction& phi, std::span<const cplx> x) {
  std::vector<double> m(x.size());
  kernels::modulus(x.data(), m.data(), x.size());
  return luxemburg_norm_real(phi, m);
}

double luxemburg_norm(const OrliczFunction& phi, const Seq& x) {
  return luxemburg_norm(phi, x.span());
}

}  // namespace cesaro
