#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cpzreach/harness/config.hpp"
#include "cpzreach/reach.hpp"

namespace cpzreach::harness {

/// Identification data of one run: the offline batch and the online batches indexed by arrival step.
struct ExperimentData {
  Eigen::VectorXd initial_state;
  DataBatch offline;
  std::vector<DataBatch> online;

  /// Offline and online data in one batch.
  DataBatch combined() const;
};

ExperimentData generate_data(const ExperimentConfig& cfg);

/// Algorithm-1 run with the online data of `data` (refined = true) or without it.
ReachRun run_reach(const ExperimentConfig& cfg, const ExperimentData& data, const ConstrainedPolyZonotope& X0,
                   bool refine, std::shared_ptr<FactorContext> ctx);

struct Experiment1Result {
  ExperimentConfig config;
  ExperimentData data;
  ReachRun refined;    ///< with the online refinement
  ReachRun unrefined;  ///< offline model only
};

struct Experiment2Result {
  ExperimentConfig config;
  ExperimentData data;
  ReachRun refined;   ///< offline model refined by the online segment
  ReachRun baseline;  ///< one model set from the combined data, never refined
};

Experiment1Result run_experiment_1(const ExperimentConfig& cfg);
Experiment2Result run_experiment_2(const ExperimentConfig& cfg);

}  // namespace cpzreach::harness
