#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "cpzreach/cpz.hpp"
#include "cpzreach/harness/system.hpp"
#include "cpzreach/zonotope.hpp"

namespace cpzreach::harness {

/// Initial set c + sum_i (prod_k a_k^E(k,i)) G(:,i); a missing E means the zonotope <c, G>.
struct InitialSetSpec {
  Eigen::VectorXd center;
  Eigen::MatrixXd generators;
  std::optional<ExponentMatrix> exponents;

  ConstrainedPolyZonotope build(FactorContext& ctx) const;
};

struct SegmentSpec {
  int step = 0;
  int length = 0;
};

/// How the identification data is produced: one trajectory from a random initial state
/// driven by an excitation input, cut into the offline part followed by the online segments.
struct DataSpec {
  int offline_length = 6;
  std::vector<SegmentSpec> online;
  double initial_state_radius = 5.0;
  Zonotope excitation;
};

enum class ExperimentKind { kNonConvex = 1, kComparison = 2 };

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kNonConvex;
  LtiSystem system;
  InitialSetSpec initial_set;
  Zonotope input_set;
  Zonotope noise_set;
  DataSpec data;
  int horizon = 4;
  Eigen::Index generator_limit = 200000;
  std::uint64_t seed = 1;
  int samples_per_set = 5000;
  /// 1-based coordinate pairs (i, j), i < j.
  std::vector<std::pair<int, int>> projections;
  int verify_trials = 1000;
  int compare_samples = 2000;
  std::string output_dir;

  void validate() const;
};

ExperimentConfig experiment1_defaults();
ExperimentConfig experiment2_defaults();

/// Settings on top of the defaults of the document's "experiment" (1 or 2). Unknown keys are rejected.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Row-major nested arrays <-> dense matrices.
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const std::string& what);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);

}  // namespace cpzreach::harness
