#include "cesaro/sequence.hpp"

#include <algorithm>
#include <cmath>

#include "cesaro/kernels.hpp"

namespace cesaro {

namespace {

void trim(std::vector<cplx>& v) {
  while (!v.empty() && v.back() == cplx{0.0, 0.0}) v.pop_back();
}

}  // namespace

Seq::Seq(std::vector<cplx> values) : v_(std::move(values)) {
  for (const cplx& z : v_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ValidationError("sequence entry is not finite");
  }
  trim(v_);
}

Seq Seq::from_real(std::vector<double> values) {
  std::vector<cplx> v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v[i] = cplx{values[i], 0.0};
  return Seq(std::move(v));
}

Seq Seq::basis(std::size_t index) {
  if (index == 0) throw ValidationError("basis index is 1-based");
  std::vector<cplx> v(index, cplx{0.0, 0.0});
  v[index - 1] = cplx{1.0, 0.0};
  return Seq(std::move(v));
}

Seq Seq::ones(std::size_t n) {
  return Seq(std::vector<cplx>(n, cplx{1.0, 0.0}));
}

Seq add(const Seq& x, const Seq& y) {
  std::vector<cplx> v(std::max(x.support(), y.support()), cplx{0.0, 0.0});
  std::copy(x.values().begin(), x.values().end(), v.begin());
  for (std::size_t i = 0; i < y.support(); ++i) v[i] += y.values()[i];
  return Seq(std::move(v));
}

Seq scale(const Seq& x, cplx a) {
  std::vector<cplx> v(x.values());
  for (cplx& z : v) z *= a;
  return Seq(std::move(v));
}

Rearrangement rearrange(std::span<const cplx> x) {
  // Trim the zero tail first so the profile length is the support size.
  std::size_t n = x.size();
  while (n > 0 && x[n - 1] == cplx{0.0, 0.0}) --n;
  std::vector<double> m(n);
  kernels::modulus(x.data(), m.data(), n);
  std::sort(m.begin(), m.end(), std::greater<double>());
  return Rearrangement{std::move(m)};
}

Rearrangement rearrange(const Seq& x) { return rearrange(x.span()); }

Rearrangement rearrange_real(std::span<const double> moduli) {
  std::size_t n = moduli.size();
  while (n > 0 && moduli[n - 1] == 0.0) --n;
  std::vector<double> m(moduli.begin(), moduli.begin() + n);
  for (double v : m) {
    if (!(v >= 0.0)) throw ValidationError("rearrangement input must be nonnegative");
  }
  std::sort(m.begin(), m.end(), std::greater<double>());
  return Rearrangement{std::move(m)};
}

double hlp_excess(const Rearrangement& x, const Rearrangement& y) {
  const std::size_t n = std::max(x.size(), y.size());
  double px = 0.0, py = 0.0, worst = -HUGE_VAL;
  for (std::size_t i = 1; i <= n; ++i) {
    px += x.at(i);
    py += y.at(i);
    worst = std::max(worst, px - py);
  }
  return n == 0 ? 0.0 : worst;
}

bool hlp_leq(const Rearrangement& x, const Rearrangement& y, double tol) {
  return hlp_excess(x, y) <= tol;
}

bool hlp_leq(const Seq& x, const Seq& y, double tol) {
  return hlp_leq(rearrange(x), rearrange(y), tol);
}

}  // namespace cesaro
