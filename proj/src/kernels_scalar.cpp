// Scalar reference kernels.  These define the semantics the SIMD variants
// are tested against; keep them simple enough to audit by eye.

#include "cesaro/kernels.hpp"

#include <cmath>

namespace cesaro::kernels {
namespace {

void s_acc_add(double* dst, const double* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += src[i];
}

void s_scale(double* dst, const double* src, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a * src[i];
}

void s_axpy(double* dst, const double* src, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] += a * src[i];
}

double s_sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double s_max(const double* x, std::size_t n) {
  double acc = x[0];
  for (std::size_t i = 1; i < n; ++i)
    if (x[i] > acc) acc = x[i];
  return acc;
}

double s_sum_abs(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i]);
  return acc;
}

double s_sum_sq(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double s_dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

// |z| as sqrt(re^2 + im^2).  The data this library feeds through here is
// O(1)-scaled, so the naive form is fine and it matches the SIMD variants
// operation for operation.
void s_modulus(const std::complex<double>* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    out[i] = std::sqrt(re * re + im * im);
  }
}

double s_sum_abs_c(const std::complex<double>* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    acc += std::sqrt(re * re + im * im);
  }
  return acc;
}

double s_max_abs_c(const std::complex<double>* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    const double sq = re * re + im * im;
    if (sq > acc) acc = sq;
  }
  return std::sqrt(acc);
}

}  // namespace

namespace detail {

const Ops* scalar_ops() {
  static const Ops ops = {
      "scalar", s_acc_add, s_scale, s_axpy,      s_sum,       s_max,
      s_sum_abs, s_sum_sq, s_dot,   s_modulus,   s_sum_abs_c, s_max_abs_c,
  };
  return &ops;
}

}  // namespace detail
}  // namespace cesaro::kernels
