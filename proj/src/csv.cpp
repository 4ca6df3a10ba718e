#include "cesaro/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cesaro {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  return out;
}

void write_preamble(std::ofstream& out, const std::string& config_hash,
                    const std::vector<std::string>& columns) {
  out << "# cesaro v" << kToolVersion << " config=" << config_hash << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw ValidationError("write to '" + path + "' failed");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_trace_csv(const std::string& path, const ErgodicTrace& trace,
                     const std::string& config_hash) {
  std::ofstream out = open_out(path);
  std::vector<std::string> columns = {"n", "lost_mass"};
  for (const auto& label : trace.norm_labels) columns.push_back("norm:" + label);
  for (std::size_t idx : trace.coord_indices) {
    columns.push_back("coord:" + std::to_string(idx) + ":re");
    columns.push_back("coord:" + std::to_string(idx) + ":im");
  }
  write_preamble(out, config_hash, columns);
  for (std::size_t r = 0; r < trace.steps.size(); ++r) {
    out << trace.steps[r] << ',' << fmt(trace.lost_mass[r]);
    for (double v : trace.norms[r]) out << ',' << fmt(v);
    for (const cplx& z : trace.coords[r]) out << ',' << fmt(z.real()) << ',' << fmt(z.imag());
    out << "\n";
  }
  finish(out, path);
}

void write_trace_csv(const std::string& path, const MatrixTrace& trace,
                     const std::string& config_hash) {
  std::ofstream out = open_out(path);
  std::vector<std::string> columns = {"n", "lost_mass"};
  for (const auto& label : trace.norm_labels) columns.push_back("norm:" + label);
  write_preamble(out, config_hash, columns);
  for (std::size_t r = 0; r < trace.steps.size(); ++r) {
    out << trace.steps[r] << ',' << fmt(trace.lost_mass[r]);
    for (double v : trace.norms[r]) out << ',' << fmt(v);
    out << "\n";
  }
  finish(out, path);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  CsvTable table;

  std::string line;
  if (!std::getline(in, line)) throw ValidationError("'" + path + "' is empty");
  // "# cesaro v<version> config=<hash>"
  std::stringstream header(line);
  std::string hash_tok, version_tok, name_tok, sharp_tok;
  if (!(header >> sharp_tok >> name_tok >> version_tok >> hash_tok) || sharp_tok != "#" ||
      name_tok != "cesaro" || version_tok.size() < 2 || version_tok[0] != 'v' ||
      hash_tok.rfind("config=", 0) != 0)
    throw ValidationError("'" + path + "' lacks the version comment line");
  table.version = version_tok.substr(1);
  table.config_hash = hash_tok.substr(7);

  if (!std::getline(in, line)) throw ValidationError("'" + path + "' lacks a header row");
  table.columns = split(line);
  if (table.columns.empty()) throw ValidationError("'" + path + "' header row is empty");

  std::size_t row_no = 2;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != table.columns.size())
      throw ValidationError("'" + path + "' row " + std::to_string(row_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(table.columns.size()));
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0')
        throw ValidationError("'" + path + "' row " + std::to_string(row_no) +
                              ": bad number '" + cell + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace cesaro
