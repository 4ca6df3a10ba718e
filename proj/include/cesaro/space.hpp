#pragma once
//
// Symmetric sequence space descriptors and their norms.  One SpaceSpec names
// a norm on finite-support sequences; the same descriptor is reused for the
// operator ideal it induces on singular value profiles.
//

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cesaro/orlicz.hpp"
#include "cesaro/sequence.hpp"
#include "cesaro/weight.hpp"

namespace cesaro {

enum class SpaceKind { Lp, C0, Orlicz, Lorentz, Marcinkiewicz };

struct SpaceSpec {
  SpaceKind kind = SpaceKind::C0;
  double p = 0.0;  // Lp only; infinity() selects the sup norm
  std::shared_ptr<const OrliczFunction> phi;  // Orlicz only
  std::shared_ptr<const ConcaveWeight> psi;   // Lorentz / Marcinkiewicz only

  static SpaceSpec lp(double p);
  static SpaceSpec c0();
  static SpaceSpec orlicz(std::shared_ptr<const OrliczFunction> phi);
  static SpaceSpec lorentz(std::shared_ptr<const ConcaveWeight> psi);
  static SpaceSpec marcinkiewicz(std::shared_ptr<const ConcaveWeight> psi);

  // Round-trippable descriptor, e.g. "lp:2", "lorentz:sqrt".
  std::string label() const;
};

// Inline descriptors: "lp:P" (P may be "inf"), "linf", "c0", "orlicz:FN",
// "lorentz:FN", "marcinkiewicz:FN" with FN one of the named built-ins.
SpaceSpec parse_space(const std::string& text);

// Individual norms.
double lp_norm(double p, std::span<const cplx> x);
double lorentz_norm(const ConcaveWeight& psi, std::span<const cplx> x);
double marcinkiewicz_norm(const ConcaveWeight& psi, std::span<const cplx> x);

// Dispatch on the descriptor.  The _real variants take a nonnegative modulus
// multiset directly (singular values enter this way).
double space_norm(const SpaceSpec& spec, std::span<const cplx> x);
double space_norm(const SpaceSpec& spec, const Seq& x);
double space_norm_real(const SpaceSpec& spec, std::span<const double> moduli);

// Norm of e_1, used to rescale when comparing against l1 and sup norms.
double unit_norm(const SpaceSpec& spec);

struct Classification {
  bool separable = false;
  bool equals_l1 = false;
  bool met = false;  // mean ergodic theorem holds in the induced ideal
  bool iet = false;  // individual (uniform) ergodic theorem
  std::vector<std::string> evidence;
};

// Sampled classification:
//   Lp            separable, equals_l1 iff p == 1
//   C0            separable, not l1
//   Orlicz        separable iff doubling holds at 0; l1 iff phi(u)/u bounded
//                 away from 0 at 0
//   Lorentz       separable iff psi(+0) = 0 and psi unbounded; l1 iff
//                 psi(t)/t stays positive at infinity; psi bounded rejected
//   Marcinkiewicz psi(t)/t must vanish at infinity (else rejected); equals l1
//                 iff psi bounded, in which case it is separable; otherwise
//                 non-separable
// met = separable && !equals_l1; iet is true for every admitted descriptor.
Classification classify(const SpaceSpec& spec);

}  // namespace cesaro
