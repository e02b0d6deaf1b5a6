#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpzreach/cpz.hpp"
#include "cpzreach/errors.hpp"
#include "cpzreach/exact_mult.hpp"
#include "cpzreach/identification.hpp"
#include "cpzreach/matrix_sets.hpp"

namespace cpzreach {

/// Ids introduced by one reach step.
struct StepFactors {
  FactorIds input;
  FactorIds noise;
};

/// Generator count of model ⊗ (R x U) ⊞ Z_w.
inline Index predicted_generators(Index model_generators, Index reach_generators, Index input_generators,
                                  Index noise_generators) {
  const Index h = reach_generators + input_generators;
  return model_generators + h * (1 + model_generators) + noise_generators;
}

/// R_{k+1} = model ⊗ (R_k x U) ⊞ Z_w. The model keeps its ids; U and Z_w get fresh ones.
template <typename Scalar>
BasicConstrainedPolyZonotope<Scalar> reach_step(const BasicConstrainedMatZonotope<Scalar>& model,
                                                const BasicConstrainedPolyZonotope<Scalar>& R,
                                                const BasicZonotope<Scalar>& U, const BasicZonotope<Scalar>& Zw,
                                                FactorContext& ctx, StepFactors* introduced = nullptr,
                                                Index generator_limit = 200000) {
  if (model.cols() != R.dim() + U.dim() || model.rows() != R.dim() || Zw.dim() != R.dim())
    throw DimensionError("reach_step: model must be n x (n + m) for states of size n and inputs of size m");
  const Index predicted =
      predicted_generators(model.num_generators(), R.num_generators(), U.num_generators(), Zw.num_generators());
  if (predicted > generator_limit)
    throw GeneratorLimitError("reach_step: next reachable set would have " + std::to_string(predicted) +
                              " generators, above the limit of " + std::to_string(generator_limit) +
                              "; shorten the horizon");
  const auto RU = cartesian_product(R, U, ctx);
  const auto W = zonotope_to_cpz(Zw, ctx);
  if (introduced) {
    introduced->input.assign(RU.ids().end() - U.num_generators(), RU.ids().end());
    introduced->noise = W.ids();
  }
  return exact_add(exact_multiply(cmz_to_cpmz(model), RU), W);
}

struct ReachOptions {
  int horizon = 5;
  Index generator_limit = 200000;
};

/// One model-set update: the data it used and the resulting set.
template <typename Scalar>
struct ModelRecord {
  /// -1 for the offline model, otherwise the step whose data triggered the refinement.
  int step = -1;
  BasicDataBatch<Scalar> data;
  BasicMatrixZonotope<Scalar> from_data;
  BasicConstrainedMatZonotope<Scalar> set;
};

template <typename Scalar>
struct StepRecord {
  int k = 0;
  /// Index into ReachRun::models of the model set used for this step.
  std::size_t model_index = 0;
  bool refined = false;
  Index buffered_columns = 0;
  StepFactors factors;
  Index generators = 0;
  Index num_factors = 0;
  Index constraints = 0;
  double seconds = 0;
};

template <typename Scalar>
struct BasicReachRun {
  std::shared_ptr<FactorContext> ctx;
  std::vector<ModelRecord<Scalar>> models;
  /// reach_sets[0] is X0; reach_sets[k + 1] follows step k.
  std::vector<BasicConstrainedPolyZonotope<Scalar>> reach_sets;
  std::vector<StepRecord<Scalar>> steps;
  /// Online data not yet used for a refinement.
  BasicDataBatch<Scalar> buffer;
  BasicZonotope<Scalar> input_set;
  BasicZonotope<Scalar> noise_set;

  const BasicConstrainedMatZonotope<Scalar>& model() const { return models.back().set; }
  std::size_t num_refinements() const { return models.size() - 1; }
};

using ReachRun = BasicReachRun<double>;

/// Offline identification, then per step: buffer online data, refine once the
/// buffer has full row rank (and clear it), and propagate one step.
///
/// online[k] is the data that arrives before step k; shorter lists mean no data.
template <typename Scalar>
BasicReachRun<Scalar> run_algorithm1(const BasicConstrainedPolyZonotope<Scalar>& X0,
                                     const BasicDataBatch<Scalar>& offline,
                                     const std::vector<BasicDataBatch<Scalar>>& online,
                                     const BasicZonotope<Scalar>& U, const BasicZonotope<Scalar>& Zw,
                                     const ReachOptions& opts = {}, std::shared_ptr<FactorContext> ctx = nullptr) {
  if (opts.horizon < 0) throw ConfigError("run_algorithm1: horizon must be nonnegative");
  if (!ctx) ctx = std::make_shared<FactorContext>();
  BasicReachRun<Scalar> run;
  run.ctx = ctx;
  run.input_set = U;
  run.noise_set = Zw;
  run.reach_sets.push_back(X0);

  auto M0 = model_set_from_data(offline, Zw);
  auto M0_set = to_cmz(M0, *ctx);
  run.models.push_back({-1, offline, std::move(M0), std::move(M0_set)});

  const Index need = offline.state_dim() + offline.input_dim();
  using Clock = std::chrono::steady_clock;
  for (int k = 0; k < opts.horizon; ++k) {
    const auto t0 = Clock::now();
    StepRecord<Scalar> rec;
    rec.k = k;
    if (static_cast<std::size_t>(k) < online.size() && online[static_cast<std::size_t>(k)].size() > 0) {
      run.buffer = concat_batches(run.buffer, online[static_cast<std::size_t>(k)]);
      rec.buffered_columns = run.buffer.size();
      if (run.buffer.size() >= need && numerical_rank(run.buffer.regressor()) == need) {
        auto Mi = model_set_from_data(run.buffer, Zw);
        auto refined = refine_model_set(run.model(), Mi, *ctx);
        run.models.push_back({k, std::move(run.buffer), std::move(Mi), std::move(refined)});
        run.buffer = {};
        rec.refined = true;
      }
    }
    rec.model_index = run.models.size() - 1;
    auto next = reach_step(run.model(), run.reach_sets.back(), U, Zw, *ctx, &rec.factors, opts.generator_limit);
    rec.generators = next.num_generators();
    rec.num_factors = next.num_factors();
    rec.constraints = next.num_constraints();
    rec.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    run.reach_sets.push_back(std::move(next));
    run.steps.push_back(std::move(rec));
  }
  return run;
}

/// Factor values of run.models[index].set that realize the true model, built from the
/// recorded noise of every batch that fed it, expressed in the run's noise set.
template <typename Scalar>
BasicFactorAssignment<Scalar> model_witness(const BasicReachRun<Scalar>& run, std::size_t index) {
  if (index >= run.models.size()) throw std::out_of_range("model_witness: no such model");
  VectorX<Scalar> values(0);
  for (std::size_t i = 0; i <= index; ++i) {
    const auto& rec = run.models[i];
    if (!rec.data.noise)
      throw MissingFactorError("model_witness: batch " + std::to_string(i) + " has no recorded noise");
    values = detail::vcat(noise_factor_vector<Scalar>(noise_coefficients(run.noise_set, *rec.data.noise)), values);
  }
  return BasicFactorAssignment<Scalar>(run.models[index].set.ids(), values);
}

}  // namespace cpzreach
