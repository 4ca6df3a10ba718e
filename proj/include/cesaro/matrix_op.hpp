#pragma once

#include <Eigen/Dense>
#include <string>

#include "cesaro/sequence.hpp"

namespace cesaro {

// Dense complex square matrix: one finite-dimensional operator block.
// Entries are validated finite at construction and on file load.
class MatrixOp {
 public:
  using Dense = Eigen::MatrixXcd;

  explicit MatrixOp(Dense m);

  static MatrixOp identity(Eigen::Index n);
  static MatrixOp zero(Eigen::Index n);
  static MatrixOp diag(std::span<const cplx> d);

  Eigen::Index dim() const { return mat_.rows(); }
  const Dense& mat() const { return mat_; }

  cplx trace() const { return mat_.trace(); }

  bool operator==(const MatrixOp& o) const { return mat_ == o.mat_; }

 private:
  Dense mat_;
};

MatrixOp add(const MatrixOp& a, const MatrixOp& b);
MatrixOp mul(const MatrixOp& a, const MatrixOp& b);
MatrixOp adjoint(const MatrixOp& a);
MatrixOp scale(const MatrixOp& a, cplx s);

// Entrywise projection onto the main diagonal. This is the trace-preserving
// expectation onto the diagonal subalgebra, and it never increases any of the
// tracked norms.
MatrixOp conditional_expectation(const MatrixOp& a);

// The diagonal read off as a sequence (entry (i,i) becomes coordinate i+1).
Seq diag_extract(const MatrixOp& a);

// The sequence placed on the diagonal of a dim x dim block. The support of x
// must fit.
MatrixOp diag_embed(const Seq& x, Eigen::Index dim);

// Text round-trip: first line the dimension, then one row per line with
// comma-joined "re,im" entries.
void save_matrix(const std::string& path, const MatrixOp& a);
MatrixOp load_matrix(const std::string& path);

}  // namespace cesaro
