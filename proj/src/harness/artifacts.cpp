#include "cpzreach/harness/artifacts.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cpzreach/errors.hpp"
#include "cpzreach/rng.hpp"

namespace cpzreach::harness {

using nlohmann::json;

namespace {

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

json run_summary(const ReachRun& run) {
  json steps = json::array();
  for (std::size_t k = 0; k < run.reach_sets.size(); ++k) {
    const auto& R = run.reach_sets[k];
    const auto box = interval_enclosure(R);
    json s = {{"k", k},
              {"generators", R.num_generators()},
              {"factors", R.num_factors()},
              {"constraints", R.num_constraints()},
              {"enclosure_lo", vector_json(box.lo)},
              {"enclosure_hi", vector_json(box.hi)}};
    if (k > 0) {
      const auto& rec = run.steps[k - 1];
      s["model_index"] = rec.model_index;
      s["refined_before_step"] = rec.refined;
    }
    steps.push_back(std::move(s));
  }
  json models = json::array();
  for (const auto& m : run.models)
    models.push_back({{"step", m.step},
                      {"columns", m.data.size()},
                      {"generators", m.set.num_generators()},
                      {"constraint_rows", m.set.num_constraint_equations()}});
  return {{"steps", steps}, {"models", models}, {"buffered_columns_left", run.buffer.size()}};
}

json run_timing(const ReachRun& run) {
  json steps = json::array();
  double total = 0;
  for (const auto& s : run.steps) {
    steps.push_back(s.seconds);
    total += s.seconds;
  }
  return {{"step_seconds", steps}, {"total_seconds", total}};
}

std::vector<ProjectionRow> project_runs(const std::vector<std::pair<std::string, const ReachRun*>>& runs,
                                        const ExperimentConfig& cfg, int samples) {
  std::vector<ProjectionRow> rows;
  if (runs.empty()) return rows;
  auto append = [&rows](std::vector<ProjectionRow> more) {
    rows.insert(rows.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  append(project_samples("X0", 0, runs.front().second->reach_sets.front(), cfg.projections, samples, cfg.seed));
  for (const auto& [label, run] : runs)
    for (std::size_t k = 1; k < run->reach_sets.size(); ++k)
      append(project_samples(label, static_cast<int>(k), run->reach_sets[k], cfg.projections, samples, cfg.seed));
  return rows;
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

namespace {

json base_metadata(const ExperimentConfig& cfg, int samples) {
  json steps = json::array();
  for (int k = 0; k <= cfg.horizon; ++k) steps.push_back(k);
  json proj = json::array();
  for (auto [i, j] : cfg.projections) proj.push_back({i, j});
  // Where the files went is not part of what they describe.
  json config = to_json(cfg);
  config.erase("output_dir");
  return {{"experiment", static_cast<int>(cfg.kind)},
          {"config", config},
          {"seed", cfg.seed},
          {"rng", Rng::kName},
          {"samples_per_set", samples},
          {"plotted_steps", steps},
          {"projections", proj},
          {"axis_ranges", "from data"}};
}

std::string csv_text(const std::vector<ProjectionRow>& rows) {
  std::ostringstream out;
  write_projection_csv(out, rows);
  return out.str();
}

}  // namespace

json write_experiment_1(const Experiment1Result& result, const std::string& dir, int samples) {
  const auto rows = project_runs({{"R_tilde", &result.unrefined}, {"R_hat", &result.refined}}, result.config, samples);
  write_text(dir + "/projections.csv", csv_text(rows));
  json meta = base_metadata(result.config, samples);
  meta["labels"] = {{"X0", "initial set"}, {"R_tilde", "offline model, no refinement"},
                    {"R_hat", "with online refinement"}};
  meta["runs"] = {{"R_hat", run_summary(result.refined)}, {"R_tilde", run_summary(result.unrefined)}};
  meta["files"] = {"projections.csv", "metadata.json", "timing.json"};
  write_text(dir + "/metadata.json", meta.dump(2) + "\n");
  write_text(dir + "/timing.json",
             json{{"R_hat", run_timing(result.refined)}, {"R_tilde", run_timing(result.unrefined)}}.dump(2) + "\n");
  return meta;
}

json write_experiment_2(const Experiment2Result& result, const WidthTable& widths, const std::string& dir,
                        int samples) {
  const auto rows = project_runs({{"R_hat", &result.refined}, {"R_bar", &result.baseline}}, result.config, samples);
  write_text(dir + "/projections.csv", csv_text(rows));
  std::ostringstream w;
  write_width_csv(w, widths);
  write_text(dir + "/widths.csv", w.str());
  json meta = base_metadata(result.config, samples);
  meta["labels"] = {{"X0", "initial set"}, {"R_hat", "offline model refined online"},
                    {"R_bar", "one model set from the combined data"}};
  meta["runs"] = {{"R_hat", run_summary(result.refined)}, {"R_bar", run_summary(result.baseline)}};
  meta["widths"] = summary_json(widths);
  meta["widths"]["a"] = "R_hat";
  meta["widths"]["b"] = "R_bar";
  meta["widths"]["compare_samples"] = result.config.compare_samples;
  meta["files"] = {"projections.csv", "widths.csv", "metadata.json", "timing.json"};
  write_text(dir + "/metadata.json", meta.dump(2) + "\n");
  write_text(dir + "/timing.json",
             json{{"R_hat", run_timing(result.refined)}, {"R_bar", run_timing(result.baseline)}}.dump(2) + "\n");
  return meta;
}

}  // namespace cpzreach::harness
