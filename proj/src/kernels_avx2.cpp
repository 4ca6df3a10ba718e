// AVX2 kernel variants (4 lanes of f64).  modulus/max_abs_c deliberately use
// mul+add rather than FMA so each element matches the scalar reference bit
// for bit; the reductions reorder additions and are compared under tolerance.

#if defined(__x86_64__) || defined(__amd64__)

#include "cesaro/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace cesaro::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

void v_acc_add(double* dst, const double* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(dst + i);
    const __m256d s = _mm256_loadu_pd(src + i);
    _mm256_storeu_pd(dst + i, _mm256_add_pd(d, s));
  }
  for (; i < n; ++i) dst[i] += src[i];
}

void v_scale(double* dst, const double* src, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(dst + i, _mm256_mul_pd(va, _mm256_loadu_pd(src + i)));
  for (; i < n; ++i) dst[i] = a * src[i];
}

void v_axpy(double* dst, const double* src, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(dst + i);
    _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(src + i), d));
  }
  for (; i < n; ++i) dst[i] += a * src[i];
}

double v_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

double v_max(const double* x, std::size_t n) {
  if (n < 4) {
    double acc = x[0];
    for (std::size_t i = 1; i < n; ++i)
      if (x[i] > acc) acc = x[i];
    return acc;
  }
  __m256d acc = _mm256_loadu_pd(x);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
  double m = hmax(acc);
  for (; i < n; ++i)
    if (x[i] > m) m = x[i];
  return m;
}

double v_sum_abs(const double* x, std::size_t n) {
  const __m256d mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(mask, _mm256_loadu_pd(x + i)));
  double total = hsum(acc);
  for (; i < n; ++i) total += std::fabs(x[i]);
  return total;
}

double v_sum_sq(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

double v_dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double total = hsum(acc);
  for (; i < n; ++i) total += x[i] * y[i];
  return total;
}

// Deinterleave [r0 i0 r1 i1 | r2 i2 r3 i3] into re/im vectors.  unpacklo/hi
// leave the results in order (0,2,1,3); 0xD8 undoes that permutation.
inline void deinterleave(const double* p, __m256d& re, __m256d& im) {
  const __m256d a = _mm256_loadu_pd(p);
  const __m256d b = _mm256_loadu_pd(p + 4);
  re = _mm256_unpacklo_pd(a, b);
  im = _mm256_unpackhi_pd(a, b);
}

void v_modulus(const std::complex<double>* x, double* out, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d re, im;
    deinterleave(p + 2 * i, re, im);
    const __m256d sq = _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im));
    const __m256d r = _mm256_permute4x64_pd(_mm256_sqrt_pd(sq), 0xD8);
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    out[i] = std::sqrt(re * re + im * im);
  }
}

double v_sum_abs_c(const std::complex<double>* x, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d re, im;
    deinterleave(p + 2 * i, re, im);
    const __m256d sq = _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im));
    acc = _mm256_add_pd(acc, _mm256_sqrt_pd(sq));
  }
  double total = hsum(acc);
  for (; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    total += std::sqrt(re * re + im * im);
  }
  return total;
}

double v_max_abs_c(const std::complex<double>* x, std::size_t n) {
  const double* p = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d re, im;
    deinterleave(p + 2 * i, re, im);
    acc = _mm256_max_pd(acc, _mm256_add_pd(_mm256_mul_pd(re, re), _mm256_mul_pd(im, im)));
  }
  double m = i > 0 ? hmax(acc) : 0.0;
  for (; i < n; ++i) {
    const double re = x[i].real(), im = x[i].imag();
    const double sq = re * re + im * im;
    if (sq > m) m = sq;
  }
  return std::sqrt(m);
}

}  // namespace

namespace detail {

const Ops* avx2_ops() {
  static const Ops ops = {
      "avx2",    v_acc_add, v_scale, v_axpy,      v_sum,       v_max,
      v_sum_abs, v_sum_sq,  v_dot,   v_modulus,   v_sum_abs_c, v_max_abs_c,
  };
  return &ops;
}

}  // namespace detail
}  // namespace cesaro::kernels

#endif  // x86_64
