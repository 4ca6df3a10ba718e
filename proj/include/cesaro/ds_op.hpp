#pragma once
//
// Dunford-Schwartz operators at a finite truncation: maps that contract both
// the l1/trace norm and the sup/operator norm.  The concrete family here is
// the shift, the sign-permutation operator built from tables (phi, pi), the
// diagonal lift of a sequence operator to matrices, compression by a
// projection, and compositions of these.
//

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cesaro/matrix_op.hpp"
#include "cesaro/sequence.hpp"

namespace cesaro {

// What an operator acts on. Identity (and the empty composition) fits both.
enum class OpDomain { Sequence, Matrix, Any };

enum class OpKind { Identity, Shift, SignPerm, DiagLift, Conjugation, Compose };

// Tables for T(eta)_n = phi(n) * eta_{pi(n)} on a window of fixed size.
// Indices are 1-based; pi equal to dim()+1 marks a read past the window,
// which yields zero.
struct SignPermTables {
  std::vector<std::uint32_t> g;   // qualifying indices m_1 < m_2 < ...
  std::vector<std::int8_t> phi;   // one slot per window index, 0 off g
  std::vector<std::uint32_t> pi;  // one slot per window index

  std::size_t dim() const { return phi.size(); }

  // Positions within g where phi is -1, prefixed by the conventional 1.
  std::vector<std::size_t> breakpoints() const;
};

class DsOp;
using DsOpPtr = std::shared_ptr<const DsOp>;

class DsOp {
 public:
  virtual ~DsOp() = default;

  static DsOpPtr identity();
  static DsOpPtr shift();
  static DsOpPtr sign_perm(SignPermTables tables);
  // Acts on matrices: project onto the diagonal, apply the inner sequence
  // operator there, re-embed.
  static DsOpPtr diag_lift(DsOpPtr inner);
  // y -> inner(p y p); inner may be null (compression only).
  static DsOpPtr conjugation(MatrixOp projection, DsOpPtr inner = nullptr);
  // parts[0] acts first; the empty composition is the identity.
  static DsOpPtr compose(std::vector<DsOpPtr> parts);

  virtual OpKind kind() const = 0;
  virtual OpDomain domain() const = 0;
  virtual std::string describe() const = 0;

  // Window or matrix size this operator insists on (0 = any).
  virtual std::size_t required_dim() const { return 0; }

  // One application on a dense window, in place; scratch must be a distinct
  // buffer of the same size. Returns the l1 mass pushed past the window
  // (nonzero only for shifts).
  virtual double step_seq(std::vector<cplx>& state, std::vector<cplx>& scratch) const;

  // One application at matrix scale, in place; returns lost trace-norm mass.
  virtual double step_mat(MatrixOp::Dense& y) const;

  // Introspection for certificates and config round-trips.
  virtual const SignPermTables* tables() const { return nullptr; }
  virtual const MatrixOp* projection() const { return nullptr; }
  virtual DsOpPtr inner() const { return nullptr; }
  virtual std::span<const DsOpPtr> parts() const { return {}; }
};

struct Applied {
  Seq value;
  double lost_mass = 0.0;
};

Applied apply(const DsOp& op, const Seq& x, std::size_t dim);
MatrixOp apply(const DsOp& op, const MatrixOp& x);

// Single accumulating pass over (1/(n+1)) sum_{k<=n} T^k(x).
Applied cesaro_average(const DsOp& op, const Seq& x, std::size_t n, std::size_t dim);
MatrixOp cesaro_average(const DsOp& op, const MatrixOp& x, std::size_t n);

// Builds sign-permutation tables on a window of size dim: g collects the
// indices with 1 <= xi_m <= 2, pi advances along g (identity off g), phi is
// +1 on g except -1 at the breakpoint positions past the leading 1.
// breakpoints must be strictly increasing and start with 1; g must have more
// members than the last breakpoint.
SignPermTables build_sign_perm(const Seq& xi_plus, std::span<const std::size_t> breakpoints,
                               std::size_t dim);

struct GreedyResult {
  std::vector<std::size_t> breakpoints;  // starts with the conventional 1
  double scale = 1.0;                    // factor applied to xi_plus first
  std::size_t achieved = 0;              // crossings actually placed
  bool complete = false;
};

// Replays the signed running average of the orbit at the first qualifying
// coordinate and places a breakpoint at each strict crossing of +-1/2 (an
// exact tie extends the block by one). xi_plus is rescaled first so that the
// tail of its rearrangement sits at 1, as the construction assumes.
GreedyResult greedy_breakpoints(const Seq& xi_plus, std::size_t alternations,
                                std::size_t horizon);

struct SignPermPlan {
  Seq xi_scaled;
  GreedyResult greedy;
  SignPermTables tables;
};

// scale -> greedy -> tables in one step.
SignPermPlan plan_sign_perm(const Seq& xi_plus, std::size_t alternations, std::size_t horizon,
                            std::size_t dim);

struct ContractViolation {
  std::size_t sample = 0;
  std::string which;  // "l1", "linf", "trace", "op"
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ContractReport {
  std::size_t checked = 0;
  std::vector<ContractViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks both contraction inequalities on every sample; violations are data,
// not errors.
ContractReport verify_ds_contract(const DsOp& op, std::span<const Seq> samples, std::size_t dim,
                                  double tol = kTolExact);
ContractReport verify_ds_contract(const std::function<Seq(const Seq&)>& op,
                                  std::span<const Seq> samples, double tol = kTolExact);
ContractReport verify_ds_contract(const DsOp& op, std::span<const MatrixOp> samples,
                                  double tol = kTolSvd);

}  // namespace cesaro
