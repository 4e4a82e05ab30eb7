#include "psqm/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string>

#include "json.hpp"
#include "psqm/errors.hpp"

namespace psqm {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw config_error(msg); }

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

void check_keys(const json& obj, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known) fail("unknown key \"" + join(prefix, item.key()) + "\"");
  }
}

const json& member(const json& obj, const char* key, const std::string& prefix) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing key \"" + join(prefix, key) + "\"");
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) fail("\"" + path + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail("\"" + path + "\" must be finite");
  return d;
}

double positive_at(const json& v, const std::string& path) {
  const double d = number_at(v, path);
  if (!(d > 0.0)) fail("\"" + path + "\" must be positive");
  return d;
}

long long integer_at(const json& v, const std::string& path) {
  if (!v.is_number_integer() && !v.is_number_unsigned())
    fail("\"" + path + "\" must be an integer");
  return v.get<long long>();
}

std::string string_at(const json& v, const std::string& path) {
  if (!v.is_string()) fail("\"" + path + "\" must be a string");
  return v.get<std::string>();
}

GridConfig parse_grid(const json& j) {
  if (!j.is_object()) fail("\"grid\" must be an object");
  check_keys(j, "grid", {"x0", "dx", "n"});
  GridConfig g;
  g.x0 = number_at(member(j, "x0", "grid"), "grid.x0");
  g.dx = positive_at(member(j, "dx", "grid"), "grid.dx");
  const long long n = integer_at(member(j, "n", "grid"), "grid.n");
  if (n < 16 || !is_power_of_two(static_cast<std::size_t>(n)))
    fail("\"grid.n\" must be a power of two >= 16");
  g.n = static_cast<std::size_t>(n);
  return g;
}

StateSpec parse_state(const json& j) {
  if (!j.is_object()) fail("\"state\" must be an object");
  const std::string kind = string_at(member(j, "kind", "state"), "state.kind");
  if (kind == "plane_wave") {
    check_keys(j, "state", {"kind", "k_index"});
    PlaneWaveSpec s;
    s.k_index = integer_at(member(j, "k_index", "state"), "state.k_index");
    return s;
  }
  if (kind == "gaussian") {
    check_keys(j, "state", {"kind", "center", "momentum", "sigma"});
    GaussianSpec s;
    if (j.contains("center")) s.center = number_at(j["center"], "state.center");
    if (j.contains("momentum"))
      s.momentum = number_at(j["momentum"], "state.momentum");
    if (j.contains("sigma")) s.sigma = positive_at(j["sigma"], "state.sigma");
    return s;
  }
  if (kind == "ho_eigenstate") {
    check_keys(j, "state", {"kind", "level", "mass", "omega"});
    HoEigenstateSpec s;
    const long long level =
        integer_at(member(j, "level", "state"), "state.level");
    if (level < 0) fail("\"state.level\" must be >= 0");
    s.level = static_cast<int>(level);
    if (j.contains("mass")) s.mass = positive_at(j["mass"], "state.mass");
    if (j.contains("omega")) s.omega = positive_at(j["omega"], "state.omega");
    return s;
  }
  fail("\"state.kind\" must be one of plane_wave, gaussian, ho_eigenstate");
}

PotentialSpec parse_potential(const json& j) {
  const std::string prefix = "hamiltonian.potential";
  if (!j.is_object()) fail("\"" + prefix + "\" must be an object");
  const std::string kind =
      string_at(member(j, "kind", prefix), prefix + ".kind");
  if (kind == "zero") {
    check_keys(j, prefix, {"kind"});
    return ZeroPotential{};
  }
  if (kind == "harmonic") {
    check_keys(j, prefix, {"kind", "omega"});
    HarmonicPotential p;
    if (j.contains("omega")) p.omega = positive_at(j["omega"], prefix + ".omega");
    return p;
  }
  if (kind == "quartic") {
    check_keys(j, prefix, {"kind", "lambda"});
    QuarticPotential p;
    if (j.contains("lambda"))
      p.lambda = number_at(j["lambda"], prefix + ".lambda");
    return p;
  }
  if (kind == "square_well") {
    check_keys(j, prefix, {"kind", "depth", "width", "center"});
    SquareWellPotential p;
    if (j.contains("depth")) p.depth = number_at(j["depth"], prefix + ".depth");
    if (j.contains("width")) p.width = positive_at(j["width"], prefix + ".width");
    if (j.contains("center"))
      p.center = number_at(j["center"], prefix + ".center");
    return p;
  }
  fail("\"" + prefix + ".kind\" must be one of zero, harmonic, quartic, square_well");
}

HamiltonianConfig parse_hamiltonian(const json& j) {
  if (!j.is_object()) fail("\"hamiltonian\" must be an object");
  check_keys(j, "hamiltonian", {"mass", "potential"});
  HamiltonianConfig h;
  if (j.contains("mass"))
    h.mass = positive_at(j["mass"], "hamiltonian.mass");
  if (j.contains("potential")) h.potential = parse_potential(j["potential"]);
  return h;
}

OutputRequest parse_output(const json& j, const std::string& prefix) {
  if (!j.is_object()) fail("\"" + prefix + "\" must be an object");
  const std::string kind =
      string_at(member(j, "kind", prefix), prefix + ".kind");
  if (kind == "density") {
    check_keys(j, prefix, {"kind"});
    return DensityOutput{};
  }
  if (kind == "marginals") {
    check_keys(j, prefix, {"kind"});
    return MarginalsOutput{};
  }
  if (kind == "moments") {
    check_keys(j, prefix, {"kind", "pairs"});
    const json& pairs = member(j, "pairs", prefix);
    if (!pairs.is_array() || pairs.empty())
      fail("\"" + prefix + ".pairs\" must be a non-empty array");
    MomentsOutput out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string ppath = prefix + ".pairs." + std::to_string(i);
      const json& pr = pairs[i];
      if (!pr.is_array() || pr.size() != 2)
        fail("\"" + ppath + "\" must be an [n, m] pair");
      const long long n = integer_at(pr[0], ppath + "[0]");
      const long long m = integer_at(pr[1], ppath + "[1]");
      if (n < 0 || m < 0 || n > 8 || m > 8)
        fail("\"" + ppath + "\": powers must be in [0, 8]");
      if (n + m < 1) fail("\"" + ppath + "\": n + m must be >= 1");
      out.pairs.emplace_back(static_cast<int>(n), static_cast<int>(m));
    }
    return out;
  }
  if (kind == "kernel") {
    check_keys(j, prefix, {"kind", "deltas"});
    const json& deltas = member(j, "deltas", prefix);
    if (!deltas.is_array() || deltas.empty())
      fail("\"" + prefix + ".deltas\" must be a non-empty array");
    KernelOutput out;
    for (std::size_t i = 0; i < deltas.size(); ++i)
      out.deltas.push_back(
          number_at(deltas[i], prefix + ".deltas." + std::to_string(i)));
    return out;
  }
  if (kind == "spectrum") {
    check_keys(j, prefix, {"kind", "k"});
    const long long k = integer_at(member(j, "k", prefix), prefix + ".k");
    if (k < 1) fail("\"" + prefix + ".k\" must be >= 1");
    return SpectrumOutput{static_cast<std::size_t>(k)};
  }
  if (kind == "constants_scan") {
    check_keys(j, prefix, {"kind", "d", "h_factors"});
    ConstantsScanOutput out;
    if (j.contains("d")) out.d = positive_at(j["d"], prefix + ".d");
    if (j.contains("h_factors")) {
      const json& f = j["h_factors"];
      if (!f.is_array() || f.empty())
        fail("\"" + prefix + ".h_factors\" must be a non-empty array");
      out.h_factors.clear();
      for (std::size_t i = 0; i < f.size(); ++i) {
        const std::string fp = prefix + ".h_factors." + std::to_string(i);
        const double v = positive_at(f[i], fp);
        if (!out.h_factors.empty() && !(v < out.h_factors.back()))
          fail("\"" + fp + "\": h factors must be strictly descending");
        out.h_factors.push_back(v);
      }
    }
    return out;
  }
  fail("\"" + prefix + ".kind\" must be one of density, marginals, moments, "
       "kernel, spectrum, constants_scan");
}

Tolerances parse_tolerances(const json& j) {
  if (!j.is_object()) fail("\"tolerances\" must be an object");
  Tolerances t;
  const std::pair<const char*, double Tolerances::*> names[] = {
      {"normalization", &Tolerances::normalization},
      {"unitarity", &Tolerances::unitarity},
      {"round_trip", &Tolerances::round_trip},
      {"derivative", &Tolerances::derivative},
      {"symmetry", &Tolerances::symmetry},
      {"kernel_equivalence", &Tolerances::kernel_equivalence},
      {"kernel_hermiticity", &Tolerances::kernel_hermiticity},
      {"factorization", &Tolerances::factorization},
      {"moment_relative", &Tolerances::moment_relative},
      {"moment_absolute", &Tolerances::moment_absolute},
      {"independence", &Tolerances::independence},
      {"ordering", &Tolerances::ordering},
      {"convention", &Tolerances::convention},
      {"hermiticity", &Tolerances::hermiticity},
      {"orthonormality", &Tolerances::orthonormality},
      {"eigen_residual", &Tolerances::eigen_residual},
      {"energy_consistency", &Tolerances::energy_consistency},
      {"convergence_order", &Tolerances::convergence_order},
      {"derivation_split", &Tolerances::derivation_split},
      {"constants_round_trip", &Tolerances::constants_round_trip},
      {"constants_scaling", &Tolerances::constants_scaling},
      {"analyticity", &Tolerances::analyticity},
  };
  for (const auto& item : j.items()) {
    bool known = false;
    for (const auto& [name, field] : names)
      if (item.key() == name) {
        t.*field = positive_at(item.value(), "tolerances." + item.key());
        known = true;
        break;
      }
    if (!known) fail("unknown key \"tolerances." + item.key() + "\"");
  }
  return t;
}

ExperimentConfig validate(const json& doc) {
  if (!doc.is_object()) fail("config root must be an object");
  check_keys(doc, "",
             {"grid", "state", "convention", "hbar", "hamiltonian", "outputs",
              "output_dir", "tolerances"});
  ExperimentConfig cfg;
  if (doc.contains("grid")) cfg.grid = parse_grid(doc["grid"]);
  if (doc.contains("state")) cfg.state = parse_state(doc["state"]);
  if (doc.contains("convention")) {
    const std::string c = string_at(doc["convention"], "convention");
    if (c == "plain")
      cfg.convention = Convention::plain;
    else if (c == "conjugate")
      cfg.convention = Convention::conjugate;
    else
      fail("\"convention\" must be \"plain\" or \"conjugate\"");
  }
  if (doc.contains("hbar")) cfg.hbar = positive_at(doc["hbar"], "hbar");
  if (doc.contains("hamiltonian"))
    cfg.hamiltonian = parse_hamiltonian(doc["hamiltonian"]);
  if (doc.contains("outputs")) {
    const json& outs = doc["outputs"];
    if (!outs.is_array()) fail("\"outputs\" must be an array");
    for (std::size_t i = 0; i < outs.size(); ++i)
      cfg.outputs.push_back(
          parse_output(outs[i], "outputs." + std::to_string(i)));
  }
  if (doc.contains("output_dir")) {
    const std::string dir = string_at(doc["output_dir"], "output_dir");
    if (dir.empty()) fail("\"output_dir\" must not be empty");
    cfg.output_dir = dir;
  }
  if (doc.contains("tolerances"))
    cfg.tolerances = parse_tolerances(doc["tolerances"]);

  // cross-field consistency: every request must have its inputs configured
  const bool has_grid = cfg.grid.has_value();
  const bool has_state = cfg.state.has_value();
  for (std::size_t i = 0; i < cfg.outputs.size(); ++i) {
    const std::string prefix = "outputs." + std::to_string(i);
    const auto& out = cfg.outputs[i];
    if (std::holds_alternative<SpectrumOutput>(out)) {
      if (!cfg.hamiltonian)
        fail("\"" + prefix + "\": spectrum output needs a \"hamiltonian\"");
      if (!has_grid) fail("\"" + prefix + "\": spectrum output needs a \"grid\"");
      if (std::get<SpectrumOutput>(out).k > cfg.grid->n)
        fail("\"" + prefix + ".k\" exceeds grid.n = " +
             std::to_string(cfg.grid->n));
    } else if (!std::holds_alternative<ConstantsScanOutput>(out)) {
      if (!has_grid || !has_state)
        fail("\"" + prefix + "\" needs both \"grid\" and \"state\"");
    }
  }
  return cfg;
}

void set_by_path(json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    fail("override \"" + assignment + "\" is not of the form path=value");
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare words become strings
  }

  json* node = &root;
  std::size_t start = 0;
  std::vector<std::string> tokens;
  while (start <= path.size()) {
    const auto dot = path.find('.', start);
    const std::string tok =
        path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (tok.empty()) fail("override path \"" + path + "\" has an empty segment");
    tokens.push_back(tok);
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const std::string& tok = tokens[t];
    const bool last = t + 1 == tokens.size();
    const bool is_index = !tok.empty() &&
                          tok.find_first_not_of("0123456789") == std::string::npos;
    if (node->is_array()) {
      if (!is_index)
        fail("override path \"" + path + "\": \"" + tok +
             "\" indexes an array and must be numeric");
      const std::size_t idx = std::stoull(tok);
      if (idx >= node->size())
        fail("override path \"" + path + "\": index " + tok +
             " is out of range");
      node = &(*node)[idx];
    } else {
      if (!node->is_object() && !node->is_null())
        fail("override path \"" + path + "\" descends into a scalar");
      node = &(*node)[tok];
    }
    if (last) *node = value;
  }
}

json read_document(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec) || ec)
    throw io_error("config file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail("config parse error in " + path.string() + ": " + e.what());
  }
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
  return validate(read_document(path));
}

ExperimentConfig load_config(const std::filesystem::path& path,
                             const std::vector<std::string>& overrides) {
  json doc = read_document(path);
  for (const auto& o : overrides) set_by_path(doc, o);
  return validate(doc);
}

Grid1D grid_from_config(const GridConfig& gc) {
  return make_grid(gc.x0, gc.dx, gc.n);
}

}  // namespace psqm
