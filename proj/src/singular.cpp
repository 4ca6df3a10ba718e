#include "cesaro/singular.hpp"

#include <Eigen/SVD>

namespace cesaro {

std::vector<double> singular_values(const MatrixOp& a) {
  Eigen::JacobiSVD<MatrixOp::Dense> svd(a.mat());
  const auto& s = svd.singularValues();
  std::vector<double> out(static_cast<std::size_t>(s.size()));
  for (Eigen::Index i = 0; i < s.size(); ++i) out[static_cast<std::size_t>(i)] = s(i);
  return out;  // Eigen returns them sorted non-increasing
}

double ideal_norm(const SpaceSpec& spec, const MatrixOp& a) {
  const std::vector<double> s = singular_values(a);
  return space_norm_real(spec, s);
}

double op_norm_inf(const MatrixOp& a) {
  const std::vector<double> s = singular_values(a);
  return s.empty() ? 0.0 : s.front();
}

double trace_norm(const MatrixOp& a) {
  double acc = 0.0;
  for (double v : singular_values(a)) acc += v;
  return acc;
}

bool op_hlp_leq(const MatrixOp& a, const MatrixOp& b, double tol) {
  return hlp_leq(Rearrangement{singular_values(a)}, Rearrangement{singular_values(b)}, tol);
}

double op_hlp_excess(const MatrixOp& a, const MatrixOp& b) {
  return hlp_excess(Rearrangement{singular_values(a)}, Rearrangement{singular_values(b)});
}

MatrixOp matrix_abs(const MatrixOp& a) {
  Eigen::JacobiSVD<MatrixOp::Dense> svd(a.mat(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const MatrixOp::Dense v = svd.matrixV();
  return MatrixOp(v * svd.singularValues().asDiagonal() * v.adjoint());
}

}  // namespace cesaro
