#pragma once
//
// Orlicz modulars.  A function Phi enters as a black-box evaluator together
// with a probe grid; construction validates Phi(0) = 0, positivity for u > 0,
// monotonicity and midpoint convexity on that grid.  Norm evaluation and the
// classification probes only ever call the evaluator.
//

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cesaro/defaults.hpp"
#include "cesaro/sequence.hpp"

namespace cesaro {

class OrliczFunction {
 public:
  // grid: strictly decreasing positive values; used for validation and as the
  // default sampling set for the doubling / limit probes below.
  OrliczFunction(std::string name, std::function<double(double)> f,
                 std::vector<double> grid);

  double operator()(double u) const { return f_(u); }
  const std::string& name() const { return name_; }
  const std::vector<double>& probe_grid() const { return grid_; }

  // Built-ins.  "power:p" needs p >= 1; "linear" is power:1.  "exp-decay" is
  // u -> exp(-1/u), probed only on [2^-9, 2^-1] because it underflows to an
  // exact 0 further down, which the doubling probe must treat as invalid.
  static std::shared_ptr<const OrliczFunction> power(double p);
  static std::shared_ptr<const OrliczFunction> linear();
  static std::shared_ptr<const OrliczFunction> exp_decay();
  // Piecewise-linear interpolation through (t, value) pairs, extended beyond
  // the last node with the final slope.
  static std::shared_ptr<const OrliczFunction> table(
      std::vector<std::pair<double, double>> nodes);
  static std::shared_ptr<const OrliczFunction> named(const std::string& spec);

 private:
  std::string name_;
  std::function<double(double)> f_;
  std::vector<double> grid_;
};

// Doubling behaviour of Phi at zero: sup of Phi(2u)/Phi(u) over the grid.
struct Delta2Report {
  bool holds;              // sup ratio <= kDelta2Max and every ratio finite
  double sup_ratio;
  double worst_u;          // grid point achieving the sup
  std::vector<double> ratios;  // one per grid point, for the record
};
Delta2Report orlicz_delta2_at_zero(const OrliczFunction& phi,
                                   std::span<const double> grid,
                                   double ratio_cap = kDelta2Max);
Delta2Report orlicz_delta2_at_zero(const OrliczFunction& phi);

// Whether the Orlicz space collapses onto l1: limsup Phi(u)/u > 0 at zero.
// The limit estimate is Phi(u)/u at the smallest grid point.
struct EqualsL1Report {
  bool equals;
  double limit_estimate;
};
EqualsL1Report orlicz_equals_l1(const OrliczFunction& phi);

// Luxemburg norm: inf { a > 0 : sum Phi(|x_n| / a) <= 1 }, by bisection on a
// bracket with g(lo) >= 1 >= g(hi).  Throws ValidationError when no bracket
// exists (Phi degenerate on the needed range).
double luxemburg_norm(const OrliczFunction& phi, std::span<const cplx> x);
double luxemburg_norm(const OrliczFunction& phi, const Seq& x);
double luxemburg_norm_real(const OrliczFunction& phi, std::span<const double> moduli);

}  // namespace cesaro
