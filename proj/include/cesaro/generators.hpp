#pragma once
//
// Seeded input generators shared by the experiments and the test suite.
// Everything is deterministic given the Rng state.
//

#include <cstddef>
#include <random>
#include <string>
#include <utility>

#include "cesaro/matrix_op.hpp"
#include "cesaro/sequence.hpp"
#include "cesaro/weight.hpp"

namespace cesaro {

using Rng = std::mt19937_64;

// Non-increasing witness xi_k = psi(k) - psi(k-1) for k = 1..n.
Seq marcinkiewicz_witness(const ConcaveWeight& psi, std::size_t n);

// Dense complex entries, uniform in [-scale, scale]^2, occasional exact zero.
Seq random_seq(Rng& rng, std::size_t n, double scale = 1.0);

// (x, y) with x submajorized by y: y nonnegative non-increasing, x obtained
// from y by Robin Hood transfers plus a mild shrink.
std::pair<Seq, Seq> random_hlp_pair(Rng& rng, std::size_t n);

MatrixOp random_matrix(Rng& rng, std::size_t n, double scale = 1.0);
MatrixOp random_psd(Rng& rng, std::size_t n);
MatrixOp random_unitary(Rng& rng, std::size_t n);
// Diagonal 0/1 projection, never zero or full.
MatrixOp diag_projection(Rng& rng, std::size_t n);
// Orthogonal projection onto a random k-dimensional subspace.
MatrixOp rank_k_projection(Rng& rng, std::size_t n, std::size_t k);

// Named inputs: "e1", "ones:N", "basis:I", "witness:PSI:N" with PSI a named
// weight ("witness:log1p:65536").
Seq named_seq(const std::string& text);

}  // namespace cesaro
