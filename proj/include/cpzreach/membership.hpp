#pragma once

#include <optional>

#include "cpzreach/box_lsq.hpp"
#include "cpzreach/matrix_sets.hpp"

namespace cpzreach {

template <typename Scalar>
struct MembershipResult {
  bool is_member = false;
  /// Box-feasible factor values minimizing the residual, keyed by N.ids().
  std::optional<BasicFactorAssignment<Scalar>> witness;
  /// max-norm of the stacked residual [vec(C + sum a_k G_k - M); vec(sum a_k A_k - B)].
  Scalar residual = 0;
};

/// Does some a in [-1,1]^gamma realize M under N's constraints? Solved as a
/// bounded-variable least-squares problem on the stacked linear system.
template <typename Scalar>
MembershipResult<Scalar> cmz_membership(const BasicConstrainedMatZonotope<Scalar>& N, const MatrixX<Scalar>& M,
                                        Scalar tol = Scalar(1e-6), const BoxLsqOptions<Scalar>& opts = {}) {
  if (M.rows() != N.rows() || M.cols() != N.cols()) throw DimensionError("cmz_membership: matrix shape mismatch");
  const Index mn = N.rows() * N.cols(), r = N.num_constraint_equations(), g = N.num_generators();
  MatrixX<Scalar> S(mn + r, g);
  VectorX<Scalar> d(mn + r);
  for (Index k = 0; k < g; ++k) {
    S.col(k).head(mn) = vectorize(N.generators()[static_cast<std::size_t>(k)]);
    if (r > 0) S.col(k).tail(r) = vectorize(N.constraint_blocks()[static_cast<std::size_t>(k)]);
  }
  d.head(mn) = vectorize(M - N.center());
  if (r > 0) d.tail(r) = vectorize(N.constraint_rhs());

  const VectorX<Scalar> ones = VectorX<Scalar>::Ones(g);
  const auto sol = solve_box_lsq<Scalar>(S, d, -ones, ones, opts);
  MembershipResult<Scalar> out;
  out.residual = d.size() == 0 ? Scalar(0) : (S * sol.x - d).cwiseAbs().maxCoeff();
  out.is_member = out.residual <= tol;
  out.witness = BasicFactorAssignment<Scalar>(N.ids(), sol.x.cwiseMax(Scalar(-1)).cwiseMin(Scalar(1)));
  return out;
}

}  // namespace cpzreach
