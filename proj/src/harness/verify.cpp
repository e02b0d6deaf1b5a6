#include "cpzreach/harness/verify.hpp"

#include <algorithm>

#include "cpzreach/linalg.hpp"

namespace cpzreach::harness {

namespace {

constexpr std::uint64_t kVerifyStream = 2;

}  // namespace

Eigen::VectorXd translate_factors(const Zonotope& from, const Zonotope& to, const Eigen::VectorXd& alpha) {
  if (from.center() == to.center() && from.generators() == to.generators()) return alpha;
  const Eigen::VectorXd beta = pseudo_inverse(to.generators()) * (from.point(alpha) - to.center());
  return beta.cwiseMax(-1.0).cwiseMin(1.0);
}

VerifyReport verify_run(const ReachRun& run, const LtiSystem& sys, const Zonotope& input_set, const Zonotope& noise_set,
                        int trials, std::uint64_t seed, double tolerance) {
  VerifyReport report;
  report.trials = std::max(trials, 0);
  report.tolerance = tolerance;
  if (report.trials == 0) return report;

  FactorAssignment models;
  for (std::size_t i = 0; i < run.models.size(); ++i) models.merge(model_witness(run, i));
  std::vector<CpzEvaluator<double>> evaluators;
  for (const auto& R : run.reach_sets) evaluators.emplace_back(R);
  report.steps.resize(run.reach_sets.size());
  for (std::size_t k = 0; k < report.steps.size(); ++k) report.steps[k].k = static_cast<int>(k);

  const auto& X0 = run.reach_sets.front();
  const int horizon = static_cast<int>(run.steps.size());
  Rng rng(seed, kVerifyStream);
  for (int t = 0; t < report.trials; ++t) {
    const Trajectory tr = simulate(sys, X0, input_set, noise_set, horizon, rng, true);
    FactorAssignment a = models;
    for (std::size_t i = 0; i < X0.ids().size(); ++i)
      a.set(X0.ids()[i], tr.initial_factors(static_cast<Eigen::Index>(i)));
    for (int k = 0; k < horizon; ++k) {
      const auto& f = run.steps[static_cast<std::size_t>(k)].factors;
      const Eigen::VectorXd au = translate_factors(input_set, run.input_set, tr.input_factors.col(k));
      const Eigen::VectorXd aw = translate_factors(noise_set, run.noise_set, tr.noise_factors.col(k));
      for (std::size_t i = 0; i < f.input.size(); ++i) a.set(f.input[i], au(static_cast<Eigen::Index>(i)));
      for (std::size_t i = 0; i < f.noise.size(); ++i) a.set(f.noise[i], aw(static_cast<Eigen::Index>(i)));
    }
    for (std::size_t k = 0; k < evaluators.size(); ++k) {
      const auto e = evaluators[k](a.aligned(run.reach_sets[k].ids()));
      auto& s = report.steps[k];
      const double mismatch = (e.point - tr.states.col(static_cast<Eigen::Index>(k))).cwiseAbs().maxCoeff();
      s.max_mismatch = std::max(s.max_mismatch, mismatch);
      s.max_residual = std::max(s.max_residual, e.constraint_residual);
    }
  }
  for (const auto& s : report.steps)
    if (!(s.max_mismatch <= tolerance && s.max_residual <= tolerance)) report.passed = false;
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : report.steps)
    steps.push_back({{"k", s.k}, {"max_mismatch", s.max_mismatch}, {"max_residual", s.max_residual}});
  return {{"trials", report.trials}, {"tolerance", report.tolerance}, {"passed", report.passed}, {"steps", steps}};
}

}  // namespace cpzreach::harness
