#pragma once
//
// Trace serialization.  Each experiment run writes one CSV whose first line
// is a comment carrying the tool version and the config hash, so result
// files can be matched back to the exact configuration that produced them.
//

#include <string>
#include <vector>

#include "cesaro/evolve.hpp"

namespace cesaro {

inline constexpr const char* kToolVersion = "0.1.0";

// Checkpoint rows: n, lost_mass, one column per tracked norm, then a re/im
// pair per tracked coordinate (matrix traces carry no coordinate columns).
// Values print with 17 significant digits so round-trips are exact.
void write_trace_csv(const std::string& path, const ErgodicTrace& trace,
                     const std::string& config_hash);
void write_trace_csv(const std::string& path, const MatrixTrace& trace,
                     const std::string& config_hash);

struct CsvTable {
  std::string version;
  std::string config_hash;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Reads a file produced by write_trace_csv. Ragged rows or a malformed
// header are reported as ValidationError.
CsvTable read_csv(const std::string& path);

}  // namespace cesaro
