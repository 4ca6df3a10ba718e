#include "cesaro/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "cesaro/generators.hpp"

namespace cesaro {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw ValidationError(msg); }

void check_keys(const json& j, std::initializer_list<std::string_view> allowed,
                const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (std::string_view a : allowed) {
      if (it.key() == a) {
        ok = true;
        break;
      }
    }
    if (!ok) bad("unknown key '" + it.key() + "' in " + where);
  }
}

std::size_t get_size(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    bad(std::string("'") + key + "' must be an integer");
  const long long x = v.get<long long>();
  if (x < 0) bad(std::string("'") + key + "' must be nonnegative");
  return std::size_t(x);
}

cplx parse_literal_entry(const json& v) {
  if (v.is_number()) return cplx(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return cplx(v[0].get<double>(), v[1].get<double>());
  bad("sequence literals are numbers or [re, im] pairs");
}

OpNode parse_op(const json& j) {
  if (!j.is_object()) bad("operator must be an object");
  check_keys(j, {"kind", "breakpoints", "dim", "projection", "inner", "parts"}, "operator");
  OpNode n;
  if (!j.contains("kind") || !j.at("kind").is_string()) bad("operator needs a string 'kind'");
  n.kind = j.at("kind").get<std::string>();
  const bool known = n.kind == "identity" || n.kind == "shift" || n.kind == "sign-perm" ||
                     n.kind == "diag-lift" || n.kind == "conjugation" || n.kind == "compose";
  if (!known) bad("unknown operator kind '" + n.kind + "'");

  if (j.contains("breakpoints")) {
    if (n.kind != "sign-perm") bad("'breakpoints' only applies to sign-perm");
    const auto& b = j.at("breakpoints");
    if (b.is_string()) {
      n.breakpoints = b.get<std::string>();
    } else if (b.is_array()) {
      std::string joined;
      for (const auto& e : b) {
        if (!e.is_number_integer() && !e.is_number_unsigned())
          bad("explicit breakpoints must be integers");
        if (!joined.empty()) joined += ',';
        joined += std::to_string(e.get<long long>());
      }
      n.breakpoints = joined;
    } else {
      bad("'breakpoints' is a string or an array of integers");
    }
  }
  if (j.contains("dim") && n.kind != "sign-perm") bad("'dim' only applies to sign-perm");
  n.dim = get_size(j, "dim", 0);
  if (j.contains("projection")) {
    if (n.kind != "conjugation") bad("'projection' only applies to conjugation");
    n.projection = j.at("projection").get<std::string>();
  }
  if (j.contains("inner")) {
    if (n.kind != "diag-lift" && n.kind != "conjugation")
      bad("'inner' only applies to diag-lift and conjugation");
    n.inner = std::make_shared<OpNode>(parse_op(j.at("inner")));
  }
  if (j.contains("parts")) {
    if (n.kind != "compose") bad("'parts' only applies to compose");
    for (const auto& p : j.at("parts")) n.parts.push_back(parse_op(p));
  }

  if (n.kind == "sign-perm" && n.breakpoints.empty())
    bad("sign-perm needs 'breakpoints' (\"greedy:K\" or explicit)");
  if (n.kind == "diag-lift" && !n.inner) bad("diag-lift needs 'inner'");
  if (n.kind == "conjugation" && n.projection.empty()) bad("conjugation needs 'projection'");
  return n;
}

InputNode parse_input(const json& j) {
  if (!j.is_object()) bad("input must be an object");
  check_keys(j, {"seq", "matrix", "random"}, "input");
  InputNode n;
  int set = 0;
  if (j.contains("seq")) {
    ++set;
    const auto& s = j.at("seq");
    if (s.is_string()) {
      n.seq_name = s.get<std::string>();
    } else if (s.is_array()) {
      for (const auto& e : s) n.literal.push_back(parse_literal_entry(e));
    } else {
      bad("'seq' is a generator name or an array of values");
    }
  }
  if (j.contains("matrix")) {
    ++set;
    n.is_matrix = true;
    n.matrix = j.at("matrix").get<std::string>();
    if (n.matrix.empty()) bad("'matrix' must name a source");
  }
  if (j.contains("random")) {
    ++set;
    const auto& r = j.at("random");
    if (!r.is_object()) bad("'random' must be an object");
    check_keys(r, {"kind", "n", "scale"}, "input.random");
    if (!r.contains("kind") || !r.at("kind").is_string()) bad("random input needs a 'kind'");
    n.random_kind = r.at("kind").get<std::string>();
    const bool known = n.random_kind == "seq" || n.random_kind == "matrix" ||
                       n.random_kind == "psd" || n.random_kind == "unitary";
    if (!known) bad("unknown random kind '" + n.random_kind + "'");
    n.is_matrix = n.random_kind != "seq";
    n.random_n = get_size(r, "n", 0);
    if (n.random_n == 0) bad("random input needs n >= 1");
    if (r.contains("scale")) {
      if (!r.at("scale").is_number()) bad("'scale' must be a number");
      n.random_scale = r.at("scale").get<double>();
    }
  }
  if (set != 1) bad("input takes exactly one of 'seq', 'matrix', 'random'");
  return n;
}

json op_to_json(const OpNode& n) {
  json j;
  j["kind"] = n.kind;
  if (!n.breakpoints.empty()) j["breakpoints"] = n.breakpoints;
  if (n.dim != 0) j["dim"] = n.dim;
  if (!n.projection.empty()) j["projection"] = n.projection;
  if (n.inner) j["inner"] = op_to_json(*n.inner);
  if (!n.parts.empty()) {
    json parts = json::array();
    for (const auto& p : n.parts) parts.push_back(op_to_json(p));
    j["parts"] = parts;
  }
  return j;
}

json input_to_json(const InputNode& n) {
  json j;
  if (n.is_matrix && !n.matrix.empty()) {
    j["matrix"] = n.matrix;
  } else if (!n.random_kind.empty()) {
    json r;
    r["kind"] = n.random_kind;
    r["n"] = n.random_n;
    if (n.random_scale != 1.0) r["scale"] = n.random_scale;
    j["random"] = r;
  } else if (!n.seq_name.empty()) {
    j["seq"] = n.seq_name;
  } else {
    json vals = json::array();
    for (const cplx& z : n.literal) {
      if (z.imag() == 0.0)
        vals.push_back(z.real());
      else
        vals.push_back(json::array({z.real(), z.imag()}));
    }
    j["seq"] = vals;
  }
  return j;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used]))) ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      bad(std::string("bad number '") + tok + "' in " + what);
    }
  }
  if (out.empty()) bad(std::string(what) + " is empty");
  return out;
}

MatrixOp parse_matrix_source(const std::string& text) {
  if (text.rfind("diag:", 0) == 0) {
    const auto vals = parse_double_list(text.substr(5), "diagonal");
    std::vector<cplx> d(vals.begin(), vals.end());
    return MatrixOp::diag(d);
  }
  if (!text.empty() && text[0] == '@') return load_matrix(text.substr(1));
  bad("matrix sources are 'diag:v1,v2,...' or '@path'");
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    bad(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) bad("config must be a JSON object");

  ExperimentConfig c;
  try {
    check_keys(j,
               {"space", "operator", "input", "horizon", "dim", "norms", "coords", "tol",
                "window", "out", "seed", "strict"},
               "config");
    if (j.contains("space")) c.space_label = j.at("space").get<std::string>();
    if (j.contains("operator")) c.op = parse_op(j.at("operator"));
    if (!j.contains("input")) bad("config needs an 'input'");
    c.input = parse_input(j.at("input"));
    c.horizon = get_size(j, "horizon", 1024);
    if (c.horizon == 0) bad("horizon must be at least 1");
    c.dim = get_size(j, "dim", 0);
    if (j.contains("norms")) {
      for (const auto& e : j.at("norms")) c.norm_labels.push_back(e.get<std::string>());
    }
    if (j.contains("coords")) {
      for (const auto& e : j.at("coords")) {
        const long long v = e.get<long long>();
        if (v < 1) bad("coords are 1-based indices");
        c.coords.push_back(std::size_t(v));
      }
    }
    if (j.contains("tol")) {
      c.tol = j.at("tol").get<double>();
      if (!(c.tol > 0.0)) bad("tol must be positive");
    }
    c.window = get_size(j, "window", kDetectWindow);
    if (c.window < 2 || c.window > kDetectWindow) bad("window must lie in [2, 8]");
    if (j.contains("seed")) {
      c.seed = j.at("seed").get<std::uint64_t>();
      c.has_seed = true;
    }
    if (j.contains("strict")) c.strict = j.at("strict").get<bool>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception& e) {
    bad(std::string("config field error: ") + e.what());
  }

  if (!c.input.random_kind.empty() && !c.has_seed)
    bad("random inputs need an explicit seed");
  return c;
}

std::string ExperimentConfig::to_text() const {
  json j;
  j["space"] = space_label;
  j["operator"] = op_to_json(op);
  j["input"] = input_to_json(input);
  j["horizon"] = horizon;
  if (dim != 0) j["dim"] = dim;
  if (!norm_labels.empty()) j["norms"] = norm_labels;
  if (!coords.empty()) j["coords"] = coords;
  if (tol > 0.0) j["tol"] = tol;
  if (window != kDetectWindow) j["window"] = window;
  if (has_seed) j["seed"] = seed;
  if (strict) j["strict"] = true;
  if (!out.empty()) j["out"] = out;
  return j.dump();
}

std::string ExperimentConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(to_text())));
  return buf;
}

BuiltExperiment build_experiment(const ExperimentConfig& config) {
  BuiltExperiment b;
  b.space = parse_space(config.space_label);

  b.norms.push_back(b.space);
  for (const auto& label : config.norm_labels) {
    const SpaceSpec spec = parse_space(label);
    bool dup = false;
    for (const auto& have : b.norms) dup = dup || have.label() == spec.label();
    if (!dup) b.norms.push_back(spec);
  }

  Rng rng(config.seed);
  const InputNode& in = config.input;
  if (!in.is_matrix) {
    if (!in.literal.empty() || (in.seq_name.empty() && in.random_kind.empty())) {
      b.seq_input = Seq(std::vector<cplx>(in.literal));
    } else if (!in.seq_name.empty()) {
      b.seq_input = named_seq(in.seq_name);
    } else {
      b.seq_input = random_seq(rng, in.random_n, in.random_scale);
    }
  } else {
    if (!in.matrix.empty()) {
      b.mat_input = parse_matrix_source(in.matrix);
    } else if (in.random_kind == "matrix") {
      b.mat_input = random_matrix(rng, in.random_n, in.random_scale);
    } else if (in.random_kind == "psd") {
      b.mat_input = random_psd(rng, in.random_n);
    } else {
      b.mat_input = random_unitary(rng, in.random_n);
    }
  }

  // The sequence the operator tables are carved from: the input itself, or
  // the diagonal of a matrix input.
  const Seq xi = b.seq_input ? *b.seq_input : diag_extract(*b.mat_input);
  std::optional<SignPermPlan> plan;

  std::function<DsOpPtr(const OpNode&)> build = [&](const OpNode& node) -> DsOpPtr {
    if (node.kind == "identity") return DsOp::identity();
    if (node.kind == "shift") return DsOp::shift();
    if (node.kind == "sign-perm") {
      const std::size_t window =
          node.dim ? node.dim : (config.dim ? config.dim : xi.support());
      if (node.breakpoints.rfind("greedy:", 0) == 0) {
        if (plan) bad("at most one greedy sign-perm per experiment");
        std::size_t k = 0;
        try {
          k = std::size_t(std::stoull(node.breakpoints.substr(7)));
        } catch (const std::exception&) {
          bad("bad greedy alternation count in '" + node.breakpoints + "'");
        }
        if (k == 0) bad("greedy alternation count must be positive");
        plan = plan_sign_perm(xi, k, config.horizon, window);
        return DsOp::sign_perm(plan->tables);
      }
      const auto raw = parse_double_list(node.breakpoints, "breakpoints");
      std::vector<std::size_t> bps;
      for (double v : raw) {
        if (v < 1.0 || v != double(std::size_t(v))) bad("breakpoints must be positive integers");
        bps.push_back(std::size_t(v));
      }
      return DsOp::sign_perm(build_sign_perm(xi, bps, window));
    }
    if (node.kind == "diag-lift") return DsOp::diag_lift(build(*node.inner));
    if (node.kind == "conjugation") {
      MatrixOp p = parse_matrix_source(node.projection);
      DsOpPtr inner = node.inner ? build(*node.inner) : nullptr;
      return DsOp::conjugation(std::move(p), std::move(inner));
    }
    std::vector<DsOpPtr> parts;
    parts.reserve(node.parts.size());
    for (const auto& part : node.parts) parts.push_back(build(part));
    return DsOp::compose(std::move(parts));
  };
  b.op = build(config.op);

  if (plan) {
    b.greedy = plan->greedy;
    b.input_scale = plan->greedy.scale;
    if (b.seq_input) {
      b.seq_input = plan->xi_scaled;
    } else if (b.input_scale != 1.0) {
      b.mat_input = scale(*b.mat_input, cplx(b.input_scale));
    }
  }

  b.params.horizon = config.horizon;
  b.params.dim = config.dim;
  b.params.norms = b.norms;
  b.params.coords = config.coords;
  b.tol = config.tol > 0.0
              ? config.tol
              : (b.space.kind == SpaceKind::C0 ? kTolDetectInf : kTolDetectIdeal);
  b.window = config.window;
  b.strict = config.strict;
  b.out = config.out;
  b.hash = config.hash();
  return b;
}

}  // namespace cesaro
