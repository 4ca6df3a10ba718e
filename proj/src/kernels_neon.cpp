// NEON kernel variants (2 lanes of f64).  Mirrors kernels_avx2.cpp; the
// vld2q load deinterleaves complex pairs directly.

#if defined(__aarch64__)

#include "cesaro/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace cesaro::kernels {
namespace {

void v_acc_add(double* dst, const double* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(dst + i, vaddq_f64(vld1q_f64(dst + i), vld1q_f64(src + i)));
  for (; i < n; ++i) dst[i] += src[i];
}

void v_scale(double* dst, const double* src, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(dst + i, vmulq_f64(va, vld1q_f64(src + i)));
  for (; i < n; ++i) dst[i] = a * src[i];
}

void v_axpy(double* dst, const double* src, double a, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(dst + i, vfmaq_f64(vld1q_f64(dst + i), va, vld1q_f64(src + i)));
  for (; i < n; ++i) dst[i] += a * src[i];
}

double v_sum(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

double v_max(const double* x, std::size_t n) {
  if (n < 2) return x[0];
  float64x2_t acc = vld1q_f64(x);
  std::size_t i = 2;
  for (; i + 2 <= n; i += 2) acc = vmaxq_f64(acc, vld1q_f64(x + i));
  double m = vmaxvq_f64(acc);
  for (; i < n; ++i)
    if (x[i] > m) m = x[i];
  return m;
}

double v_sum_abs(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vabsq_f64(vld1q_f64(x + i)));
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += std::fabs(x[i]);
  return total;
}

double v_sum_sq(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t v = vld1q_f64(x + i);
    acc = vfmaq_f64(acc, v, v);
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double v_dot(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

void v_modulus(const std::complex<double>* x, double* out, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t v = vld2q_f64(p + 2 * i);
    const float64x2_t sq =
        vaddq_f64(vmulq_f64(v.val[0], v.val[0]), vmulq_f64(v.val[1], v.val[1]));
    vst1q_f64(out + i, vsqrtq_f64(sq));
  }
  for (; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    out[i] = std::sqrt(re * re + im * im);
  }
}

double v_sum_abs_c(const std::complex<double>* x, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t v = vld2q_f64(p + 2 * i);
    const float64x2_t sq =
        vaddq_f64(vmulq_f64(v.val[0], v.val[0]), vmulq_f64(v.val[1], v.val[1]));
    acc = vaddq_f64(acc, vsqrtq_f64(sq));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    total += std::sqrt(re * re + im * im);
  }
  return total;
}

double v_max_abs_c(const std::complex<double>* x, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2x2_t v = vld2q_f64(p + 2 * i);
    acc = vmaxq_f64(acc, vaddq_f64(vmulq_f64(v.val[0], v.val[0]),
                                   vmulq_f64(v.val[1], v.val[1])));
  }
  double m = i > 0 ? vmaxvq_f64(acc) : 0.0;
  for (; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    const double sq = re * re + im * im;
    if (sq > m) m = sq;
  }
  return std::sqrt(m);
}

}  // namespace

namespace detail {

const Ops* neon_ops() {
  static const Ops ops = {
      "neon",    v_acc_add, v_scale, v_axpy,      v_sum,       v_max,
      v_sum_abs, v_sum_sq,  v_dot,   v_modulus,   v_sum_abs_c, v_max_abs_c,
  };
  return &ops;
}

}  // namespace detail
}  // namespace cesaro::kernels

#endif  // __aarch64__
