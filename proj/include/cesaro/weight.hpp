#pragma once
//
// Concave weights for Lorentz and Marcinkiewicz norms.  Like Orlicz
// functions, a weight is a black-box evaluator with validation and sampled
// behaviour probes; the norms only read psi at integer arguments.
//

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cesaro/defaults.hpp"

namespace cesaro {

// Sampled limit behaviour, computed once at construction:
//   plus0_estimate      psi(t) at t = 2^-kZeroProbeMax
//   plus0_zero          whether that estimate is ~0 (relative to psi(1))
//   unbounded           doubling increments at t = 2^59 still exceed the floor
//   ratio_inf_estimate  psi(t)/t at t = 2^kInfProbeMax
//   ratio_inf_zero      whether that estimate is below kLimitThreshold
//   ratio_zero_estimate psi(t)/t at t = 2^-kZeroProbeMax
struct WeightProbes {
  double plus0_estimate = 0.0;
  bool plus0_zero = false;
  bool unbounded = false;
  double ratio_inf_estimate = 0.0;
  bool ratio_inf_zero = false;
  double ratio_zero_estimate = 0.0;
};

class ConcaveWeight {
 public:
  ConcaveWeight(std::string name, std::function<double(double)> f);

  double operator()(double t) const { return f_(t); }
  // psi(n) - psi(n-1), 1-based.
  double increment(std::size_t n) const;
  const std::string& name() const { return name_; }
  const WeightProbes& probes() const { return probes_; }

  // Built-ins: "power:p" with 0 < p <= 1, "sqrt" = power:0.5,
  // "linear" = power:1, "log1p" = log(1 + t), "exp-decay" = 1 - exp(-t).
  static std::shared_ptr<const ConcaveWeight> power(double p);
  static std::shared_ptr<const ConcaveWeight> sqrt();
  static std::shared_ptr<const ConcaveWeight> linear();
  static std::shared_ptr<const ConcaveWeight> log1p();
  static std::shared_ptr<const ConcaveWeight> exp_decay();
  // Piecewise-linear through (t, value) pairs, extended with the last slope.
  static std::shared_ptr<const ConcaveWeight> table(
      std::vector<std::pair<double, double>> nodes);
  static std::shared_ptr<const ConcaveWeight> named(const std::string& spec);

 private:
  std::string name_;
  std::function<double(double)> f_;
  WeightProbes probes_;
};

}  // namespace cesaro
