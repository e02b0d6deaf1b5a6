#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cpzreach/harness/compare.hpp"
#include "cpzreach/harness/experiments.hpp"
#include "cpzreach/harness/output.hpp"

namespace cpzreach::harness {

/// Deterministic description of a run: set sizes per step, refinements and enclosures.
nlohmann::json run_summary(const ReachRun& run);

/// Wall-clock times per step; kept apart from the deterministic metadata.
nlohmann::json run_timing(const ReachRun& run);

/// Projection rows for k = 0 (label "X0") and k = 1..N of each labelled run.
std::vector<ProjectionRow> project_runs(const std::vector<std::pair<std::string, const ReachRun*>>& runs,
                                        const ExperimentConfig& cfg, int samples);

/// Writes projections.csv, metadata.json and timing.json into `dir`; returns the metadata.
nlohmann::json write_experiment_1(const Experiment1Result& result, const std::string& dir, int samples);

/// As above plus widths.csv (a = refined, b = baseline).
nlohmann::json write_experiment_2(const Experiment2Result& result, const WidthTable& widths, const std::string& dir,
                                  int samples);

void write_text(const std::string& path, const std::string& text);

}  // namespace cpzreach::harness
