#pragma once

#include <vector>

#include "cesaro/matrix_op.hpp"
#include "cesaro/space.hpp"

namespace cesaro {

// Singular values in non-increasing order, one per row (zeros kept).
std::vector<double> singular_values(const MatrixOp& a);

// Norm of the block in the ideal built over the space: the sequence norm of
// the singular value profile.
double ideal_norm(const SpaceSpec& spec, const MatrixOp& a);

double op_norm_inf(const MatrixOp& a);  // top singular value
double trace_norm(const MatrixOp& a);   // sum of singular values

// Prefix-sum order on singular value profiles (shorter one zero-padded).
bool op_hlp_leq(const MatrixOp& a, const MatrixOp& b, double tol = kTolExact);
double op_hlp_excess(const MatrixOp& a, const MatrixOp& b);

// |a| = (a^* a)^(1/2), assembled from the singular value decomposition.
MatrixOp matrix_abs(const MatrixOp& a);

}  // namespace cesaro
