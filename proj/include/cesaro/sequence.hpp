#pragma once
//
// Finite-support complex sequences, decreasing rearrangements and the
// Hardy-Littlewood-Polya prefix order.  Indices in the public API are
// 1-based to match the usual analysis conventions; storage is 0-based.
//

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "cesaro/defaults.hpp"

namespace cesaro {

using cplx = std::complex<double>;

// A sequence with finitely many nonzero entries.  Trailing zeros are trimmed
// on construction, so two Seqs are equal iff their stored values are.
class Seq {
 public:
  Seq() = default;
  explicit Seq(std::vector<cplx> values);
  static Seq from_real(std::vector<double> values);
  static Seq basis(std::size_t index);              // e_index, 1-based
  static Seq ones(std::size_t n);

  const std::vector<cplx>& values() const { return v_; }
  std::span<const cplx> span() const { return {v_.data(), v_.size()}; }
  std::size_t support() const { return v_.size(); }  // trimmed length
  bool zero() const { return v_.empty(); }

  // 1-based access with implicit zero tail.
  cplx at(std::size_t index) const {
    return (index >= 1 && index <= v_.size()) ? v_[index - 1] : cplx{0.0, 0.0};
  }

  bool operator==(const Seq& other) const { return v_ == other.v_; }

 private:
  std::vector<cplx> v_;
};

Seq add(const Seq& x, const Seq& y);
Seq scale(const Seq& x, cplx a);

// |x| sorted in non-increasing order; length equals the trimmed support, so
// interior zeros survive as trailing zeros of the rearrangement.
struct Rearrangement {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double at(std::size_t index) const {  // 1-based, zero tail
    return (index >= 1 && index <= values.size()) ? values[index - 1] : 0.0;
  }
  bool operator==(const Rearrangement& other) const { return values == other.values; }
};

Rearrangement rearrange(std::span<const cplx> x);
Rearrangement rearrange(const Seq& x);
Rearrangement rearrange_real(std::span<const double> moduli);  // values >= 0

// Prefix-sum order on rearrangements: sum_{k<=n} x*_k <= sum_{k<=n} y*_k + tol
// for every n.  Shorter profiles are zero-padded.
bool hlp_leq(const Rearrangement& x, const Rearrangement& y, double tol = kTolExact);
bool hlp_leq(const Seq& x, const Seq& y, double tol = kTolExact);
// Largest prefix excess sum(x)-sum(y) over all n; <= tol iff hlp_leq.
double hlp_excess(const Rearrangement& x, const Rearrangement& y);

}  // namespace cesaro
