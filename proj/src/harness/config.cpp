#include "cpzreach/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "cpzreach/errors.hpp"

namespace cpzreach::harness {

using nlohmann::json;

ConstrainedPolyZonotope InitialSetSpec::build(FactorContext& ctx) const {
  if (generators.rows() != center.size()) throw ConfigError("initial_set: generator rows != center length");
  const auto h = generators.cols();
  const ExponentMatrix E = exponents ? *exponents : ExponentMatrix(ExponentMatrix::Identity(h, h));
  if (E.cols() != h) throw ConfigError("initial_set: exponent columns != generator count");
  return ConstrainedPolyZonotope(center, generators, E, ctx.allocate(static_cast<std::size_t>(E.rows())));
}

void ExperimentConfig::validate() const {
  system.validate();
  const auto n = system.state_dim(), m = system.input_dim();
  if (initial_set.center.size() != n) throw ConfigError("initial_set dimension != state dimension");
  if (input_set.dim() != m) throw ConfigError("input_set dimension != input dimension");
  if (noise_set.dim() != n) throw ConfigError("noise_set dimension != state dimension");
  if (data.excitation.dim() != m) throw ConfigError("data.excitation dimension != input dimension");
  if (data.offline_length < n + m)
    throw ConfigError("data.offline_length must be at least " + std::to_string(n + m) + " for full row rank");
  if (!(data.initial_state_radius >= 0)) throw ConfigError("data.initial_state_radius must be nonnegative");
  for (const auto& s : data.online) {
    if (s.length < 0 || s.step < 0) throw ConfigError("data.online entries need nonnegative step and length");
    if (kind == ExperimentKind::kComparison && s.length != data.offline_length)
      throw ConfigError("experiment 2 uses equally sized offline and online data (N1 = N2)");
  }
  if (kind == ExperimentKind::kComparison && data.online.empty())
    throw ConfigError("experiment 2 needs an online segment");
  if (horizon < 0) throw ConfigError("horizon must be nonnegative");
  if (generator_limit < 1) throw ConfigError("generator_limit must be positive");
  if (samples_per_set < 0 || verify_trials < 0 || compare_samples < 1)
    throw ConfigError("samples_per_set and verify_trials must be nonnegative, compare_samples positive");
  for (auto [i, j] : projections)
    if (!(1 <= i && i < j && j <= n)) throw ConfigError("projection pairs need 1 <= i < j <= state dimension");
}

namespace {

ExperimentConfig common_defaults() {
  ExperimentConfig cfg;
  cfg.system = benchmark_system();
  cfg.initial_set.center = Eigen::VectorXd::Ones(5);
  cfg.initial_set.generators = 0.1 * Eigen::MatrixXd::Identity(5, 5);
  cfg.input_set = Zonotope(Eigen::VectorXd::Constant(1, 10.0), Eigen::MatrixXd::Constant(1, 1, 0.25));
  cfg.noise_set = Zonotope(Eigen::VectorXd::Zero(5), Eigen::MatrixXd::Constant(5, 1, 0.005));
  cfg.data.excitation = Zonotope(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Constant(1, 1, 10.0));
  cfg.projections = {{1, 2}, {3, 4}, {4, 5}};
  return cfg;
}

}  // namespace

ExperimentConfig experiment1_defaults() {
  ExperimentConfig cfg = common_defaults();
  cfg.kind = ExperimentKind::kNonConvex;
  ExponentMatrix E(5, 5);
  E << 2, 1, 0, 0, 0,
       1, 2, 0, 0, 0,
       0, 0, 2, 1, 0,
       0, 0, 1, 2, 1,
       0, 0, 0, 1, 2;
  cfg.initial_set.exponents = E;
  cfg.data.offline_length = 6;
  cfg.data.online = {{1, 6}};
  cfg.horizon = 4;
  cfg.output_dir = "out/experiment1";
  return cfg;
}

ExperimentConfig experiment2_defaults() {
  ExperimentConfig cfg = common_defaults();
  cfg.kind = ExperimentKind::kComparison;
  cfg.data.offline_length = 6;
  cfg.data.online = {{0, 6}};
  cfg.horizon = 3;
  cfg.output_dir = "out/experiment2";
  return cfg;
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + ": expected an array of rows");
  if (j.empty()) return Eigen::MatrixXd(0, 0);
  const bool nested = j.front().is_array();
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = nested ? static_cast<Eigen::Index>(j.front().size()) : Eigen::Index(1);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (nested != row.is_array() || (nested && static_cast<Eigen::Index>(row.size()) != cols))
      throw ConfigError(what + ": rows must all have the same length");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = nested ? row[static_cast<std::size_t>(c)] : row;
      if (!v.is_number()) throw ConfigError(what + ": entries must be numbers");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

Eigen::VectorXd vector_from_json(const json& j, const std::string& what) {
  const Eigen::MatrixXd m = matrix_from_json(j, what);
  if (m.cols() > 1) throw ConfigError(what + ": expected a flat list");
  return m.size() == 0 ? Eigen::VectorXd(0) : Eigen::VectorXd(m.col(0));
}

Zonotope zonotope_from_json(const json& j, const std::string& what) {
  check_keys(j, {"center", "generators"}, what);
  const Eigen::VectorXd c = vector_from_json(j.at("center"), what + ".center");
  Eigen::MatrixXd G = j.contains("generators") ? matrix_from_json(j.at("generators"), what + ".generators")
                                                 : Eigen::MatrixXd(c.size(), 0);
  if (G.size() == 0) G.resize(c.size(), 0);
  if (G.rows() != c.size()) throw ConfigError(what + ": generator rows != center length");
  return Zonotope(c, G);
}

json zonotope_to_json(const Zonotope& Z) {
  return {{"center", std::vector<double>(Z.center().data(), Z.center().data() + Z.dim())},
          {"generators", matrix_to_json(Z.generators())}};
}

template <typename T>
T get_as(const json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(what + ": wrong value type");
  }
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  check_keys(doc, {"experiment", "system", "initial_set", "input_set", "noise_set", "data", "horizon",
                   "generator_limit", "seed", "samples_per_set", "projections", "verify_trials", "compare_samples",
                   "output_dir"},
             "config");
  const int which = doc.contains("experiment") ? get_as<int>(doc.at("experiment"), "experiment") : 1;
  if (which != 1 && which != 2) throw ConfigError("experiment must be 1 or 2");
  ExperimentConfig cfg = which == 1 ? experiment1_defaults() : experiment2_defaults();

  if (doc.contains("system")) {
    const json& s = doc.at("system");
    check_keys(s, {"Phi", "Gamma"}, "system");
    cfg.system.Phi = matrix_from_json(s.at("Phi"), "system.Phi");
    cfg.system.Gamma = matrix_from_json(s.at("Gamma"), "system.Gamma");
  }
  if (doc.contains("initial_set")) {
    const json& s = doc.at("initial_set");
    check_keys(s, {"center", "generators", "exponents"}, "initial_set");
    cfg.initial_set.center = vector_from_json(s.at("center"), "initial_set.center");
    cfg.initial_set.generators = matrix_from_json(s.at("generators"), "initial_set.generators");
    cfg.initial_set.exponents.reset();
    if (s.contains("exponents") && !s.at("exponents").is_null()) {
      const Eigen::MatrixXd E = matrix_from_json(s.at("exponents"), "initial_set.exponents");
      if ((E.array() < 0).any() || (E.array() != E.array().round()).any())
        throw ConfigError("initial_set.exponents must be nonnegative integers");
      cfg.initial_set.exponents = E.cast<int>();
    }
  }
  if (doc.contains("input_set")) cfg.input_set = zonotope_from_json(doc.at("input_set"), "input_set");
  if (doc.contains("noise_set")) cfg.noise_set = zonotope_from_json(doc.at("noise_set"), "noise_set");
  if (doc.contains("data")) {
    const json& d = doc.at("data");
    check_keys(d, {"offline_length", "online", "initial_state_radius", "excitation"}, "data");
    if (d.contains("offline_length")) cfg.data.offline_length = get_as<int>(d.at("offline_length"), "data.offline_length");
    if (d.contains("initial_state_radius"))
      cfg.data.initial_state_radius = get_as<double>(d.at("initial_state_radius"), "data.initial_state_radius");
    if (d.contains("excitation")) cfg.data.excitation = zonotope_from_json(d.at("excitation"), "data.excitation");
    if (d.contains("online")) {
      cfg.data.online.clear();
      for (const json& seg : d.at("online")) {
        check_keys(seg, {"step", "length"}, "data.online[]");
        cfg.data.online.push_back(
            {get_as<int>(seg.at("step"), "data.online[].step"), get_as<int>(seg.at("length"), "data.online[].length")});
      }
    }
  }
  if (doc.contains("horizon")) cfg.horizon = get_as<int>(doc.at("horizon"), "horizon");
  if (doc.contains("generator_limit"))
    cfg.generator_limit = get_as<Eigen::Index>(doc.at("generator_limit"), "generator_limit");
  if (doc.contains("seed")) cfg.seed = get_as<std::uint64_t>(doc.at("seed"), "seed");
  if (doc.contains("samples_per_set")) cfg.samples_per_set = get_as<int>(doc.at("samples_per_set"), "samples_per_set");
  if (doc.contains("verify_trials")) cfg.verify_trials = get_as<int>(doc.at("verify_trials"), "verify_trials");
  if (doc.contains("compare_samples")) cfg.compare_samples = get_as<int>(doc.at("compare_samples"), "compare_samples");
  if (doc.contains("output_dir")) cfg.output_dir = get_as<std::string>(doc.at("output_dir"), "output_dir");
  if (doc.contains("projections")) {
    cfg.projections.clear();
    for (const json& p : doc.at("projections")) {
      const auto pair = get_as<std::vector<int>>(p, "projections[]");
      if (pair.size() != 2) throw ConfigError("projections entries are [i, j] pairs");
      cfg.projections.emplace_back(pair[0], pair[1]);
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["experiment"] = static_cast<int>(cfg.kind);
  j["system"] = {{"Phi", matrix_to_json(cfg.system.Phi)}, {"Gamma", matrix_to_json(cfg.system.Gamma)}};
  const auto& c = cfg.initial_set.center;
  j["initial_set"] = {{"center", std::vector<double>(c.data(), c.data() + c.size())},
                      {"generators", matrix_to_json(cfg.initial_set.generators)}};
  if (cfg.initial_set.exponents) {
    const auto& E = *cfg.initial_set.exponents;
    json rows = json::array();
    for (Eigen::Index r = 0; r < E.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index k = 0; k < E.cols(); ++k) row.push_back(E(r, k));
      rows.push_back(row);
    }
    j["initial_set"]["exponents"] = rows;
  }
  j["input_set"] = zonotope_to_json(cfg.input_set);
  j["noise_set"] = zonotope_to_json(cfg.noise_set);
  json online = json::array();
  for (const auto& s : cfg.data.online) online.push_back({{"step", s.step}, {"length", s.length}});
  j["data"] = {{"offline_length", cfg.data.offline_length},
               {"online", online},
               {"initial_state_radius", cfg.data.initial_state_radius},
               {"excitation", zonotope_to_json(cfg.data.excitation)}};
  j["horizon"] = cfg.horizon;
  j["generator_limit"] = cfg.generator_limit;
  j["seed"] = cfg.seed;
  j["samples_per_set"] = cfg.samples_per_set;
  json proj = json::array();
  for (auto [a, b] : cfg.projections) proj.push_back({a, b});
  j["projections"] = proj;
  j["verify_trials"] = cfg.verify_trials;
  j["compare_samples"] = cfg.compare_samples;
  j["output_dir"] = cfg.output_dir;
  return j;
}

}  // namespace cpzreach::harness
