#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "cpzreach/harness/system.hpp"
#include "cpzreach/reach.hpp"

namespace cpzreach::harness {

struct StepCheck {
  int k = 0;
  double max_mismatch = 0;  ///< max |R_k(witness) - x_k|_inf over trials
  double max_residual = 0;  ///< max constraint residual of the witness in R_k
};

struct VerifyReport {
  int trials = 0;
  double tolerance = 1e-8;
  std::vector<StepCheck> steps;
  bool passed = true;
};

/// Simulates `trials` trajectories of the true system from the run's initial set with
/// inputs from `input_set` and noise from `noise_set`, builds for each one the factor
/// assignment that should realize it (data noise for the model factors, recorded draws
/// for the rest) and evaluates every reachable set there.
VerifyReport verify_run(const ReachRun& run, const LtiSystem& sys, const Zonotope& input_set, const Zonotope& noise_set,
                        int trials, std::uint64_t seed, double tolerance = 1e-8);

/// Factor values of `to` that reproduce the point of `from` at `alpha`, clamped to the unit box.
Eigen::VectorXd translate_factors(const Zonotope& from, const Zonotope& to, const Eigen::VectorXd& alpha);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace cpzreach::harness
