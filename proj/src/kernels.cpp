// Backend registry and runtime selection.

#include "cesaro/kernels.hpp"

#include <cstdlib>
#include <string>

namespace cesaro::kernels {

namespace detail {
const Ops* scalar_ops();
#if defined(CESARO_HAVE_AVX2)
const Ops* avx2_ops();
#endif
#if defined(CESARO_HAVE_NEON)
const Ops* neon_ops();
#endif
}  // namespace detail

namespace {

const Ops* lookup(std::string_view name) {
  if (name == "scalar") return detail::scalar_ops();
#if defined(CESARO_HAVE_AVX2)
  if (name == "avx2" && __builtin_cpu_supports("avx2")) return detail::avx2_ops();
#endif
#if defined(CESARO_HAVE_NEON)
  if (name == "neon") return detail::neon_ops();
#endif
  return nullptr;
}

const Ops* default_backend() {
  if (const char* env = std::getenv("CESARO_KERNELS")) {
    if (const Ops* forced = lookup(env)) return forced;
  }
#if defined(CESARO_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return detail::avx2_ops();
#endif
#if defined(CESARO_HAVE_NEON)
  return detail::neon_ops();
#endif
  return detail::scalar_ops();
}

const Ops*& active_slot() {
  static const Ops* slot = default_backend();
  return slot;
}

}  // namespace

const Ops& active() { return *active_slot(); }

const Ops& scalar() { return *detail::scalar_ops(); }

bool set_backend(std::string_view name) {
  if (const Ops* ops = lookup(name)) {
    active_slot() = ops;
    return true;
  }
  return false;
}

std::vector<std::string_view> available_backends() {
  std::vector<std::string_view> out{"scalar"};
#if defined(CESARO_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) out.push_back("avx2");
#endif
#if defined(CESARO_HAVE_NEON)
  out.push_back("neon");
#endif
  return out;
}

}  // namespace cesaro::kernels
