#pragma once

#include <vector>

#include <Eigen/Dense>

#include "cpzreach/cpz.hpp"
#include "cpzreach/identification.hpp"
#include "cpzreach/rng.hpp"
#include "cpzreach/zonotope.hpp"

namespace cpzreach::harness {

/// x(k) = Phi x(k-1) + Gamma u(k-1) + w(k).
struct LtiSystem {
  Eigen::MatrixXd Phi;
  Eigen::MatrixXd Gamma;

  Eigen::Index state_dim() const { return Phi.rows(); }
  Eigen::Index input_dim() const { return Gamma.cols(); }
  /// [Phi Gamma].
  Eigen::MatrixXd model() const;
  void validate() const;
};

/// The five-state benchmark system with one input.
LtiSystem benchmark_system();

/// A simulated trajectory and, when recorded, the factor values behind every random draw.
struct Trajectory {
  Eigen::MatrixXd states;  ///< n x (K + 1)
  Eigen::MatrixXd inputs;  ///< m x K
  Eigen::MatrixXd noise;   ///< n x K; noise.col(k) enters states.col(k + 1)
  bool recorded = false;
  Eigen::VectorXd initial_factors;  ///< factors of the initial set, aligned with its ids
  Eigen::MatrixXd input_factors;    ///< gamma_U x K
  Eigen::MatrixXd noise_factors;    ///< gamma_w x K
};

/// Forward simulation from a fixed x0 with inputs drawn uniformly from U and noise from Zw.
Trajectory simulate(const LtiSystem& sys, const Eigen::VectorXd& x0, const Zonotope& U, const Zonotope& Zw, int steps,
                    Rng& rng, bool record_witness = false);

/// As above, with x0 drawn from a feasible factor vector of X0.
Trajectory simulate(const LtiSystem& sys, const ConstrainedPolyZonotope& X0, const Zonotope& U, const Zonotope& Zw,
                    int steps, Rng& rng, bool record_witness = false);

/// Data of one trajectory split into consecutive segments of the given lengths; the noise
/// realization is stored with each segment.
std::vector<DataBatch> collect_segments(const LtiSystem& sys, const Eigen::VectorXd& x0, const Zonotope& excitation,
                                        const Zonotope& Zw, const std::vector<int>& lengths, Rng& rng);

}  // namespace cpzreach::harness
