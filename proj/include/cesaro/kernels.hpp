#pragma once
//
// Dense inner loops behind the norm and averaging code: scalar reference
// implementations plus SIMD variants selected once at startup.  All entry
// points tolerate unaligned data and n == 0 unless noted.  Complex arrays are
// treated as interleaved (re, im) doubles, which std::complex guarantees.
//

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace cesaro::kernels {

struct Ops {
  const char* name;
  void (*acc_add)(double* dst, const double* src, std::size_t n);   // dst += src
  void (*scale)(double* dst, const double* src, double a, std::size_t n);  // dst = a*src
  void (*axpy)(double* dst, const double* src, double a, std::size_t n);   // dst += a*src
  double (*sum)(const double* x, std::size_t n);
  double (*max)(const double* x, std::size_t n);        // requires n >= 1
  double (*sum_abs)(const double* x, std::size_t n);
  double (*sum_sq)(const double* x, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
  void (*modulus)(const std::complex<double>* x, double* out, std::size_t n);
  double (*sum_abs_c)(const std::complex<double>* x, std::size_t n);
  double (*max_abs_c)(const std::complex<double>* x, std::size_t n);  // n >= 1
};

// Active backend.  Defaults to the widest instruction set the CPU supports
// among the compiled variants; the CESARO_KERNELS environment variable
// ("scalar", "avx2", "neon") or set_backend() overrides it.
const Ops& active();
const Ops& scalar();
bool set_backend(std::string_view name);
std::vector<std::string_view> available_backends();

// Convenience wrappers over the interleaved-double view of complex arrays.
inline void acc_add(std::complex<double>* dst, const std::complex<double>* src, std::size_t n) {
  active().acc_add(reinterpret_cast<double*>(dst), reinterpret_cast<const double*>(src), 2 * n);
}
inline void scale(std::complex<double>* dst, const std::complex<double>* src, double a, std::size_t n) {
  active().scale(reinterpret_cast<double*>(dst), reinterpret_cast<const double*>(src), a, 2 * n);
}
inline void axpy(std::complex<double>* dst, const std::complex<double>* src, double a, std::size_t n) {
  active().axpy(reinterpret_cast<double*>(dst), reinterpret_cast<const double*>(src), a, 2 * n);
}
inline void modulus(const std::complex<double>* x, double* out, std::size_t n) {
  active().modulus(x, out, n);
}
inline double sum_abs_c(const std::complex<double>* x, std::size_t n) {
  return active().sum_abs_c(x, n);
}
inline double max_abs_c(const std::complex<double>* x, std::size_t n) {
  return n == 0 ? 0.0 : active().max_abs_c(x, n);
}

}  // namespace cesaro::kernels
