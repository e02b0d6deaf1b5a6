#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpzreach/errors.hpp"
#include "cpzreach/harness/artifacts.hpp"
#include "cpzreach/harness/verify.hpp"

namespace {

using cpzreach::harness::ExperimentConfig;
using nlohmann::json;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> horizon;
  std::optional<int> trials;
  std::optional<int> samples;
  std::string out;
};

ExperimentConfig resolve(const Options& o, int default_experiment) {
  ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = cpzreach::harness::load_config(o.config);
  } else {
    cfg = default_experiment == 2 ? cpzreach::harness::experiment2_defaults()
                                  : cpzreach::harness::experiment1_defaults();
  }
  if (o.seed) cfg.seed = *o.seed;
  if (o.horizon) cfg.horizon = *o.horizon;
  if (o.trials) cfg.verify_trials = *o.trials;
  if (o.samples) cfg.samples_per_set = *o.samples;
  if (!o.out.empty()) cfg.output_dir = o.out;
  cfg.validate();
  return cfg;
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const cpzreach::ConvertError*>(&e)) return "ConvertError";
  if (dynamic_cast<const cpzreach::DimensionError*>(&e)) return "DimensionError";
  if (dynamic_cast<const cpzreach::MissingFactorError*>(&e)) return "MissingFactorError";
  if (dynamic_cast<const cpzreach::RankDeficientError*>(&e)) return "RankDeficientError";
  if (dynamic_cast<const cpzreach::InfeasibleError*>(&e)) return "InfeasibleError";
  if (dynamic_cast<const cpzreach::GeneratorLimitError*>(&e)) return "GeneratorLimitError";
  if (dynamic_cast<const cpzreach::ConfigError*>(&e)) return "ConfigError";
  return "Error";
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "Experiment config (JSON); built-in defaults otherwise");
  sub->add_option("--seed", o.seed, "Random seed");
  sub->add_option("--horizon", o.horizon, "Number of reach steps");
  sub->add_option("--trials", o.trials, "Verification trajectories");
  sub->add_option("--samples", o.samples, "Sampled points per set and projection");
  sub->add_option("--out", o.out, "Output directory");
}

int cmd_reach(const Options& o) {
  const auto cfg = resolve(o, 1);
  auto ctx = std::make_shared<cpzreach::FactorContext>();
  const auto X0 = cfg.initial_set.build(*ctx);
  const auto data = cpzreach::harness::generate_data(cfg);
  const auto run = cpzreach::harness::run_reach(cfg, data, X0, true, ctx);
  const json summary = cpzreach::harness::run_summary(run);
  cpzreach::harness::write_text(cfg.output_dir + "/reach.json", summary.dump(2) + "\n");
  cpzreach::harness::write_text(cfg.output_dir + "/timing.json", cpzreach::harness::run_timing(run).dump(2) + "\n");
  std::cout << json{{"status", "ok"}, {"output_dir", cfg.output_dir}, {"refinements", run.num_refinements()},
                    {"final_generators", run.reach_sets.back().num_generators()}}
                   .dump()
            << "\n";
  return 0;
}

int cmd_experiment1(const Options& o) {
  const auto cfg = resolve(o, 1);
  const auto result = cpzreach::harness::run_experiment_1(cfg);
  cpzreach::harness::write_experiment_1(result, cfg.output_dir, cfg.samples_per_set);
  std::cout << json{{"status", "ok"}, {"output_dir", cfg.output_dir}}.dump() << "\n";
  return 0;
}

int cmd_experiment2(const Options& o, bool projections) {
  auto cfg = resolve(o, 2);
  const auto result = cpzreach::harness::run_experiment_2(cfg);
  const auto widths = cpzreach::harness::compare_widths(result.refined.reach_sets, result.baseline.reach_sets,
                                                        cfg.compare_samples, cfg.seed);
  if (projections) {
    cpzreach::harness::write_experiment_2(result, widths, cfg.output_dir, cfg.samples_per_set);
  } else {
    std::ostringstream w;
    cpzreach::harness::write_width_csv(w, widths);
    cpzreach::harness::write_text(cfg.output_dir + "/widths.csv", w.str());
  }
  std::cout << json{{"status", "ok"},
                    {"output_dir", cfg.output_dir},
                    {"refined_not_wider_fraction", widths.fraction_a_not_wider()}}
                   .dump()
            << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  const auto cfg = resolve(o, 1);
  auto ctx = std::make_shared<cpzreach::FactorContext>();
  const auto X0 = cfg.initial_set.build(*ctx);
  const auto data = cpzreach::harness::generate_data(cfg);
  const auto run = cpzreach::harness::run_reach(cfg, data, X0, true, ctx);
  const auto report = cpzreach::harness::verify_run(run, cfg.system, cfg.input_set, cfg.noise_set, cfg.verify_trials,
                                                    cfg.seed);
  const json j = cpzreach::harness::to_json(report);
  cpzreach::harness::write_text(cfg.output_dir + "/verify.json", j.dump(2) + "\n");
  std::cout << j.dump() << "\n";
  return report.passed ? 0 : 2;
}

int cmd_config(const Options& o, int experiment) {
  std::cout << cpzreach::harness::to_json(resolve(o, experiment)).dump(2) << "\n";
  return 0;
}

int cmd_emit(const Options& o) {
  const auto cfg = resolve(o, 1);
  if (cfg.kind == cpzreach::harness::ExperimentKind::kComparison) return cmd_experiment2(o, true);
  return cmd_experiment1(o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data-driven reachability with constrained polynomial zonotopes"};
  app.require_subcommand(1);
  Options o;
  auto* reach = app.add_subcommand("reach", "Run the identification and reachability loop from a config");
  auto* e1 = app.add_subcommand("experiment1", "Non-convex initial set, with and without online refinement");
  auto* e2 = app.add_subcommand("experiment2", "Refined model set against one model set from pooled data");
  auto* verify = app.add_subcommand("verify", "Check simulated trajectories against their witnesses");
  auto* compare = app.add_subcommand("compare", "Width table of refined against pooled-data reach sets");
  auto* emit = app.add_subcommand("emit-plot-data", "Write projection CSVs for the configured experiment");
  auto* config = app.add_subcommand("config", "Print the resolved configuration as JSON");
  int experiment = 1;
  config->add_option("--experiment", experiment, "Defaults to start from when no --config is given")
      ->check(CLI::IsMember({1, 2}));
  for (auto* sub : {reach, e1, e2, verify, compare, emit, config}) add_common(sub, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cout << json{{"status", "error"}, {"kind", "UsageError"}, {"message", e.what()}}.dump() << "\n";
    return 64;
  }

  try {
    if (*reach) return cmd_reach(o);
    if (*e1) return cmd_experiment1(o);
    if (*e2) return cmd_experiment2(o, true);
    if (*verify) return cmd_verify(o);
    if (*compare) return cmd_experiment2(o, false);
    if (*emit) return cmd_emit(o);
    if (*config) return cmd_config(o, experiment);
  } catch (const std::exception& e) {
    std::cout << json{{"status", "error"}, {"kind", error_kind(e)}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 1;
}
