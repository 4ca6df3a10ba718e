#pragma once
//
// Experiment configuration: one structured JSON file per run, resolved into
// live objects, with a canonical hash for output provenance. CLI flags
// override fields before building.
//

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cesaro/ds_op.hpp"
#include "cesaro/evolve.hpp"
#include "cesaro/matrix_op.hpp"
#include "cesaro/sequence.hpp"
#include "cesaro/space.hpp"

namespace cesaro {

struct OpNode {
  std::string kind = "identity";  // identity|shift|sign-perm|diag-lift|conjugation|compose
  std::string breakpoints;        // sign-perm: "greedy:K" or "n1,n2,..."
  std::size_t dim = 0;            // sign-perm window override
  std::string projection;         // conjugation: "diag:v1,v2,..." or "@file"
  std::shared_ptr<OpNode> inner;  // diag-lift / conjugation
  std::vector<OpNode> parts;      // compose
};

struct InputNode {
  bool is_matrix = false;
  std::string seq_name;        // named generator ("e1", "ones:N", ...)
  std::vector<cplx> literal;   // inline sequence values
  std::string matrix;          // "diag:v1,v2,..." or "@file"
  std::string random_kind;     // seq|matrix|psd|unitary
  std::size_t random_n = 0;
  double random_scale = 1.0;
};

struct ExperimentConfig {
  std::string space_label = "c0";
  OpNode op;
  InputNode input;
  std::size_t horizon = 1024;
  std::size_t dim = 0;  // 0 = infer
  std::vector<std::string> norm_labels;
  std::vector<std::size_t> coords;
  double tol = 0.0;  // 0 picks the default for the detection norm
  std::size_t window = kDetectWindow;
  std::uint64_t seed = 0;
  bool has_seed = false;
  bool strict = false;
  std::string out;

  static ExperimentConfig from_file(const std::string& path);
  static ExperimentConfig from_text(const std::string& text);

  // Canonical JSON of the effective configuration (sorted keys, defaults
  // omitted); the hash is FNV-1a 64 of this text, as 16 hex digits.
  std::string to_text() const;
  std::string hash() const;
};

struct BuiltExperiment {
  SpaceSpec space;               // norm used for detection
  std::vector<SpaceSpec> norms;  // tracked norms; the space itself leads
  DsOpPtr op;
  std::optional<Seq> seq_input;
  std::optional<MatrixOp> mat_input;
  double input_scale = 1.0;  // rescaling a greedy sign-perm plan applied
  std::optional<GreedyResult> greedy;
  EvolveParams params;
  double tol = 0.0;  // resolved detection tolerance
  std::size_t window = kDetectWindow;
  bool strict = false;
  std::string out;
  std::string hash;
};

BuiltExperiment build_experiment(const ExperimentConfig& config);

std::uint64_t fnv1a64(std::string_view text);

}  // namespace cesaro
