#include "cpzreach/harness/experiments.hpp"

#include <algorithm>

#include "cpzreach/errors.hpp"

namespace cpzreach::harness {

namespace {

constexpr std::uint64_t kDataStream = 1;

}  // namespace

DataBatch ExperimentData::combined() const {
  DataBatch all = offline;
  for (const auto& b : online) all = concat_batches(all, b);
  return all;
}

ExperimentData generate_data(const ExperimentConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed, kDataStream);
  ExperimentData out;
  out.initial_state.resize(cfg.system.state_dim());
  for (Eigen::Index i = 0; i < out.initial_state.size(); ++i)
    out.initial_state(i) = cfg.data.initial_state_radius * rng.symmetric();

  std::vector<int> lengths{cfg.data.offline_length};
  for (const auto& s : cfg.data.online) lengths.push_back(s.length);
  auto segments = collect_segments(cfg.system, out.initial_state, cfg.data.excitation, cfg.noise_set, lengths, rng);
  out.offline = std::move(segments.front());
  for (std::size_t i = 0; i < cfg.data.online.size(); ++i) {
    const auto step = static_cast<std::size_t>(cfg.data.online[i].step);
    if (out.online.size() <= step) out.online.resize(step + 1);
    out.online[step] = concat_batches(out.online[step], segments[i + 1]);
  }
  return out;
}

ReachRun run_reach(const ExperimentConfig& cfg, const ExperimentData& data, const ConstrainedPolyZonotope& X0,
                   bool refine, std::shared_ptr<FactorContext> ctx) {
  const ReachOptions opts{cfg.horizon, cfg.generator_limit};
  return run_algorithm1(X0, data.offline, refine ? data.online : std::vector<DataBatch>{}, cfg.input_set,
                        cfg.noise_set, opts, std::move(ctx));
}

Experiment1Result run_experiment_1(const ExperimentConfig& cfg) {
  cfg.validate();
  auto ctx = std::make_shared<FactorContext>();
  const auto X0 = cfg.initial_set.build(*ctx);
  ExperimentData data = generate_data(cfg);
  ReachRun refined = run_reach(cfg, data, X0, true, ctx);
  ReachRun unrefined = run_reach(cfg, data, X0, false, ctx);
  return {cfg, std::move(data), std::move(refined), std::move(unrefined)};
}

Experiment2Result run_experiment_2(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.kind != ExperimentKind::kComparison) throw ConfigError("run_experiment_2 needs an experiment-2 config");
  auto ctx = std::make_shared<FactorContext>();
  const auto X0 = cfg.initial_set.build(*ctx);
  ExperimentData data = generate_data(cfg);
  ReachRun refined = run_reach(cfg, data, X0, true, ctx);
  ExperimentData pooled{data.initial_state, data.combined(), {}};
  ReachRun baseline = run_reach(cfg, pooled, X0, false, ctx);
  return {cfg, std::move(data), std::move(refined), std::move(baseline)};
}

}  // namespace cpzreach::harness
