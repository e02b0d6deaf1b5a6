#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpzreach/errors.hpp"
#include "cpzreach/intersection.hpp"
#include "cpzreach/matrix_sets.hpp"
#include "cpzreach/zonotope.hpp"

namespace cpzreach {

/// Input-state data of one trajectory segment: x(t+1) = X_plus(:,t), x(t) = X_minus(:,t), u(t) = U_minus(:,t).
template <typename Scalar>
struct BasicDataBatch {
  MatrixX<Scalar> X_plus;
  MatrixX<Scalar> X_minus;
  MatrixX<Scalar> U_minus;
  /// Realized noise W (n x T) with X_plus = [Phi Gamma] [X_minus; U_minus] + W, when recorded.
  std::optional<MatrixX<Scalar>> noise;

  Index size() const { return X_plus.cols(); }
  Index state_dim() const { return X_plus.rows(); }
  Index input_dim() const { return U_minus.rows(); }

  /// [X_minus; U_minus].
  MatrixX<Scalar> regressor() const {
    MatrixX<Scalar> D(X_minus.rows() + U_minus.rows(), X_minus.cols());
    D << X_minus, U_minus;
    return D;
  }

  void validate() const {
    if (X_plus.cols() != X_minus.cols() || X_plus.cols() != U_minus.cols())
      throw DimensionError("DataBatch: X+, X- and U- need the same column count");
    if (X_plus.rows() != X_minus.rows()) throw DimensionError("DataBatch: X+ and X- row counts differ");
    if (noise && (noise->cols() != X_plus.cols() || noise->rows() != X_plus.rows()))
      throw DimensionError("DataBatch: noise realization must be shaped like X+");
  }
};

using DataBatch = BasicDataBatch<double>;

/// Column-wise concatenation [a b]. The noise record survives only when both carry one.
template <typename Scalar>
BasicDataBatch<Scalar> concat_batches(const BasicDataBatch<Scalar>& a, const BasicDataBatch<Scalar>& b) {
  if (a.size() == 0) return b;
  if (b.size() == 0) return a;
  a.validate();
  b.validate();
  if (a.state_dim() != b.state_dim() || a.input_dim() != b.input_dim())
    throw DimensionError("concat_batches: batches have different state or input dimensions");
  BasicDataBatch<Scalar> out{detail::hcat(a.X_plus, b.X_plus), detail::hcat(a.X_minus, b.X_minus),
                             detail::hcat(a.U_minus, b.U_minus), std::nullopt};
  if (a.noise && b.noise) out.noise = detail::hcat(*a.noise, *b.noise);
  return out;
}

/// M_w = <[c_w ... c_w], G_(j,t)> with G_(j,t) holding generator j of Z_w in column t;
/// generator (j, t) is stored at index j*T + t.
template <typename Scalar>
BasicMatrixZonotope<Scalar> noise_mat_zonotope(const BasicZonotope<Scalar>& Zw, Index T) {
  if (T < 1) throw DimensionError("noise_mat_zonotope: T must be at least 1");
  const Index n = Zw.dim();
  MatrixX<Scalar> C = Zw.center().replicate(1, T);
  std::vector<MatrixX<Scalar>> G;
  G.reserve(static_cast<std::size_t>(Zw.num_generators() * T));
  for (Index j = 0; j < Zw.num_generators(); ++j)
    for (Index t = 0; t < T; ++t) {
      MatrixX<Scalar> g = MatrixX<Scalar>::Zero(n, T);
      g.col(t) = Zw.generators().col(j);
      G.push_back(std::move(g));
    }
  return BasicMatrixZonotope<Scalar>(std::move(C), std::move(G));
}

/// Least-squares factor values of Zw for each column of W, clamped to [-1, 1] (gamma_w x T).
/// Exact whenever every column of W lies in Zw and Zw's generators are independent.
template <typename Scalar>
MatrixX<Scalar> noise_coefficients(const BasicZonotope<Scalar>& Zw, const MatrixX<Scalar>& W) {
  if (W.rows() != Zw.dim()) throw DimensionError("noise_coefficients: realization rows != noise dimension");
  const MatrixX<Scalar> beta = pseudo_inverse(Zw.generators()) * (W.colwise() - Zw.center());
  return beta.cwiseMax(Scalar(-1)).cwiseMin(Scalar(1));
}

/// Factor vector of noise_mat_zonotope(Zw, T) for coefficients beta (gamma_w x T).
template <typename Scalar>
VectorX<Scalar> noise_factor_vector(const MatrixX<Scalar>& beta) {
  const MatrixX<Scalar> bt = beta.transpose();
  return vectorize(bt);
}

/// Every [Phi Gamma] consistent with the data: (X+ - M_w) [X-; U-]^+.
template <typename Scalar>
BasicMatrixZonotope<Scalar> model_set_from_data(const BasicDataBatch<Scalar>& D, const BasicZonotope<Scalar>& Zw) {
  D.validate();
  if (Zw.dim() != D.state_dim()) throw DimensionError("model_set_from_data: noise dimension != state dimension");
  const MatrixX<Scalar> reg = D.regressor();
  const Index need = reg.rows();
  const Index rank = numerical_rank(reg);
  if (rank != need)
    throw RankDeficientError("model_set_from_data: [X-; U-] must have full row rank " + std::to_string(need) +
                             " (rank " + std::to_string(rank) + " from " + std::to_string(D.size()) + " samples)");
  const MatrixX<Scalar> pinv = pseudo_inverse(reg);
  const auto Mw = noise_mat_zonotope(Zw, D.size());
  std::vector<MatrixX<Scalar>> G;
  G.reserve(Mw.generators().size());
  for (const auto& g : Mw.generators()) G.emplace_back(-g * pinv);
  return BasicMatrixZonotope<Scalar>((D.X_plus - Mw.center()) * pinv, std::move(G));
}

/// Refinement: the model set of new data intersected with the previous model set.
/// Factors of the result are [new_mz factors, prev factors], all freshly numbered.
template <typename Scalar>
BasicConstrainedMatZonotope<Scalar> refine_model_set(const BasicConstrainedMatZonotope<Scalar>& prev,
                                                     const BasicMatrixZonotope<Scalar>& new_mz, FactorContext& ctx) {
  return cmz_intersect(to_cmz(new_mz, ctx), prev, ctx);
}

}  // namespace cpzreach
