#include "cpzreach/harness/system.hpp"

#include <numeric>
#include <string>

#include "cpzreach/errors.hpp"
#include "cpzreach/sampling.hpp"

namespace cpzreach::harness {

Eigen::MatrixXd LtiSystem::model() const {
  Eigen::MatrixXd M(Phi.rows(), Phi.cols() + Gamma.cols());
  M << Phi, Gamma;
  return M;
}

void LtiSystem::validate() const {
  if (Phi.rows() < 1 || Phi.rows() != Phi.cols()) throw DimensionError("LtiSystem: Phi must be square and nonempty");
  if (Gamma.rows() != Phi.rows() || Gamma.cols() < 1)
    throw DimensionError("LtiSystem: Gamma must have one row per state and at least one column");
}

LtiSystem benchmark_system() {
  LtiSystem sys;
  sys.Phi.resize(5, 5);
  sys.Phi << 0.9323, -0.1890, 0, 0, 0,
             0.1890, 0.9323, 0, 0, 0,
             0, 0, 0.8596, 0.0430, 0,
             0, 0, -0.0430, 0.8596, 0,
             0, 0, 0, 0, 0.9048;
  sys.Gamma.resize(5, 1);
  sys.Gamma << 0.0436, 0.0533, 0.0475, 0.0453, 0.0476;
  return sys;
}

namespace {

Eigen::VectorXd draw_factors(Eigen::Index n, Rng& rng) {
  Eigen::VectorXd a(n);
  for (Eigen::Index i = 0; i < n; ++i) a(i) = rng.symmetric();
  return a;
}

}  // namespace

Trajectory simulate(const LtiSystem& sys, const Eigen::VectorXd& x0, const Zonotope& U, const Zonotope& Zw, int steps,
                    Rng& rng, bool record_witness) {
  sys.validate();
  if (x0.size() != sys.state_dim() || U.dim() != sys.input_dim() || Zw.dim() != sys.state_dim())
    throw DimensionError("simulate: initial state, input set or noise set has the wrong dimension");
  if (steps < 0) throw DimensionError("simulate: negative step count");
  Trajectory tr;
  tr.states.resize(sys.state_dim(), steps + 1);
  tr.inputs.resize(sys.input_dim(), steps);
  tr.noise.resize(sys.state_dim(), steps);
  tr.recorded = record_witness;
  if (record_witness) {
    tr.input_factors.resize(U.num_generators(), steps);
    tr.noise_factors.resize(Zw.num_generators(), steps);
  }
  tr.states.col(0) = x0;
  for (int k = 0; k < steps; ++k) {
    const Eigen::VectorXd au = draw_factors(U.num_generators(), rng);
    const Eigen::VectorXd aw = draw_factors(Zw.num_generators(), rng);
    tr.inputs.col(k) = U.point(au);
    tr.noise.col(k) = Zw.point(aw);
    tr.states.col(k + 1) = sys.Phi * tr.states.col(k) + sys.Gamma * tr.inputs.col(k) + tr.noise.col(k);
    if (record_witness) {
      tr.input_factors.col(k) = au;
      tr.noise_factors.col(k) = aw;
    }
  }
  return tr;
}

Trajectory simulate(const LtiSystem& sys, const ConstrainedPolyZonotope& X0, const Zonotope& U, const Zonotope& Zw,
                    int steps, Rng& rng, bool record_witness) {
  const Eigen::VectorXd alpha = sample_factors(X0, 1, rng).col(0);
  Trajectory tr = simulate(sys, evaluate_aligned(X0, alpha).point, U, Zw, steps, rng, record_witness);
  if (record_witness) tr.initial_factors = alpha;
  return tr;
}

std::vector<DataBatch> collect_segments(const LtiSystem& sys, const Eigen::VectorXd& x0, const Zonotope& excitation,
                                        const Zonotope& Zw, const std::vector<int>& lengths, Rng& rng) {
  for (int len : lengths)
    if (len < 0) throw DimensionError("collect_segments: negative segment length");
  const int total = std::accumulate(lengths.begin(), lengths.end(), 0);
  const Trajectory tr = simulate(sys, x0, excitation, Zw, total, rng);
  std::vector<DataBatch> out;
  Eigen::Index start = 0;
  for (int len : lengths) {
    DataBatch b;
    b.X_minus = tr.states.middleCols(start, len);
    b.X_plus = tr.states.middleCols(start + 1, len);
    b.U_minus = tr.inputs.middleCols(start, len);
    b.noise = Eigen::MatrixXd(tr.noise.middleCols(start, len));
    out.push_back(std::move(b));
    start += len;
  }
  return out;
}

}  // namespace cpzreach::harness
