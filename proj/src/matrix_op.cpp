#include "cesaro/matrix_op.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cesaro/defaults.hpp"

namespace cesaro {

namespace {

void require_finite(const MatrixOp::Dense& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const cplx v = m(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw ValidationError("matrix entries must be finite");
    }
}

}  // namespace

MatrixOp::MatrixOp(Dense m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) throw ValidationError("matrix must be square");
  if (mat_.rows() == 0) throw ValidationError("matrix must be nonempty");
  require_finite(mat_);
}

MatrixOp MatrixOp::identity(Eigen::Index n) { return MatrixOp(Dense::Identity(n, n)); }

MatrixOp MatrixOp::zero(Eigen::Index n) { return MatrixOp(Dense::Zero(n, n)); }

MatrixOp MatrixOp::diag(std::span<const cplx> d) {
  Dense m = Dense::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return MatrixOp(std::move(m));
}

MatrixOp add(const MatrixOp& a, const MatrixOp& b) {
  if (a.dim() != b.dim()) throw ValidationError("matrix add: dimension mismatch");
  return MatrixOp(a.mat() + b.mat());
}

MatrixOp mul(const MatrixOp& a, const MatrixOp& b) {
  if (a.dim() != b.dim()) throw ValidationError("matrix mul: dimension mismatch");
  return MatrixOp(a.mat() * b.mat());
}

MatrixOp adjoint(const MatrixOp& a) { return MatrixOp(a.mat().adjoint()); }

MatrixOp scale(const MatrixOp& a, cplx s) { return MatrixOp(a.mat() * s); }

MatrixOp conditional_expectation(const MatrixOp& a) {
  MatrixOp::Dense m = MatrixOp::Dense::Zero(a.dim(), a.dim());
  m.diagonal() = a.mat().diagonal();
  return MatrixOp(std::move(m));
}

Seq diag_extract(const MatrixOp& a) {
  std::vector<cplx> d(static_cast<std::size_t>(a.dim()));
  for (Eigen::Index i = 0; i < a.dim(); ++i) d[static_cast<std::size_t>(i)] = a.mat()(i, i);
  return Seq(std::move(d));
}

MatrixOp diag_embed(const Seq& x, Eigen::Index dim) {
  if (static_cast<Eigen::Index>(x.support()) > dim)
    throw ValidationError("diag_embed: sequence support exceeds the block dimension");
  MatrixOp::Dense m = MatrixOp::Dense::Zero(dim, dim);
  const auto& v = x.values();
  for (std::size_t i = 0; i < v.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = v[i];
  return MatrixOp(std::move(m));
}

void save_matrix(const std::string& path, const MatrixOp& a) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << a.dim() << "\n";
  char buf[96];
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
      const cplx v = a.mat()(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", v.real(), v.imag());
      out << (j ? " " : "") << buf;
    }
    out << "\n";
  }
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

MatrixOp load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  Eigen::Index n = 0;
  if (!(in >> n) || n <= 0) throw ValidationError("matrix file '" + path + "': bad dimension line");
  MatrixOp::Dense m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      std::string cell;
      if (!(in >> cell)) throw ValidationError("matrix file '" + path + "': truncated");
      double re = 0.0, im = 0.0;
      if (std::sscanf(cell.c_str(), "%lf,%lf", &re, &im) != 2)
        throw ValidationError("matrix file '" + path + "': bad entry '" + cell + "'");
      m(i, j) = cplx(re, im);
    }
  std::string extra;
  if (in >> extra) throw ValidationError("matrix file '" + path + "': trailing data");
  return MatrixOp(std::move(m));
}

}  // namespace cesaro
