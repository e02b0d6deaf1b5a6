#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cpzreach/cpz.hpp"
#include "cpzreach/matrix_sets.hpp"

namespace cpzreach {

template <typename Scalar>
struct MixedIdMerge {
  BasicConstrainedPolyMatZonotope<Scalar> Y;
  BasicConstrainedPolyZonotope<Scalar> P;
  FactorIds ids;
};

/// Re-expresses Y and P over the common id list [id_Y, id_P \ id_Y]. Neither set changes.
template <typename Scalar>
MixedIdMerge<Scalar> merge_ids(const BasicConstrainedPolyMatZonotope<Scalar>& Y,
                               const BasicConstrainedPolyZonotope<Scalar>& P) {
  auto m = detail::merge_id_lists(Y.ids(), P.ids());
  const auto a = static_cast<Index>(m.ids.size());
  BasicConstrainedPolyMatZonotope<Scalar> Ybar(Y.center(), Y.generators(), detail::pad_rows(Y.exponents(), a),
                                               Y.constraint_blocks(), Y.constraint_rhs(),
                                               detail::pad_rows(Y.constraint_exponents(), a), m.ids);
  BasicConstrainedPolyZonotope<Scalar> Pbar(P.center(), P.generators(),
                                            detail::scatter_rows(P.exponents(), m.second_rows, a),
                                            P.constraint_matrix(), P.constraint_vector(),
                                            detail::scatter_rows(P.constraint_exponents(), m.second_rows, a), m.ids);
  return {std::move(Ybar), std::move(Pbar), std::move(m.ids)};
}

/// Y ⊗ P: a CPZ whose value at every joint factor assignment a is Y(a) P(a),
/// feasible exactly where both Y and P are.
///
/// Generator layout: [G_Y^(i) c_P]_i, then C_Y G_P, then G_Y^(i) G_P(:,j) at
/// position h_P*i + j (i outer). No duplicate exponent columns are merged.
template <typename Scalar>
BasicConstrainedPolyZonotope<Scalar> exact_multiply(const BasicConstrainedPolyMatZonotope<Scalar>& Y,
                                                    const BasicConstrainedPolyZonotope<Scalar>& P) {
  if (Y.cols() != P.dim())
    throw DimensionError("exact_multiply: matrix set has " + std::to_string(Y.cols()) +
                         " columns but the vector set has dimension " + std::to_string(P.dim()));
  using Matrix = MatrixX<Scalar>;
  auto merged = merge_ids(Y, P);
  const auto& Yb = merged.Y;
  const auto& Pb = merged.P;
  const Index nx = Y.rows(), gamma = Y.num_generators(), hP = P.num_generators();
  const auto a = static_cast<Index>(merged.ids.size());
  const auto& cP = P.center();
  const auto& GP = P.generators();

  const Index h = gamma + hP + gamma * hP;
  Matrix G(nx, h);
  ExponentMatrix E(a, h);
  for (Index i = 0; i < gamma; ++i) {
    G.col(i) = Y.generators()[static_cast<std::size_t>(i)] * cP;
    E.col(i) = Yb.exponents().col(i);
  }
  if (hP > 0) {
    G.middleCols(gamma, hP) = Y.center() * GP;
    E.middleCols(gamma, hP) = Pb.exponents();
  }
  for (Index i = 0; i < gamma; ++i) {
    const Index base = gamma + hP + hP * i;
    if (hP > 0) G.middleCols(base, hP) = Y.generators()[static_cast<std::size_t>(i)] * GP;
    for (Index j = 0; j < hP; ++j) E.col(base + j) = Yb.exponents().col(i) + Pb.exponents().col(j);
  }

  if (!Y.has_constraints() && !P.has_constraints())
    return BasicConstrainedPolyZonotope<Scalar>(Y.center() * cP, std::move(G), std::move(E), std::move(merged.ids));

  const Index rY = Y.constraint_rhs().size(), rP = P.num_constraints();
  const Index qY = Y.num_constraint_blocks(), qP = P.num_constraint_terms();
  Matrix A = Matrix::Zero(rY + rP, qY + qP);
  VectorX<Scalar> b(rY + rP);
  for (Index j = 0; j < qY; ++j) A.col(j).head(rY) = vectorize(Y.constraint_blocks()[static_cast<std::size_t>(j)]);
  if (rY > 0) b.head(rY) = vectorize(Y.constraint_rhs());
  if (rP > 0) {
    A.bottomRightCorner(rP, qP) = P.constraint_matrix();
    b.tail(rP) = P.constraint_vector();
  }
  ExponentMatrix R(a, qY + qP);
  R << Yb.constraint_exponents(), Pb.constraint_exponents();

  return BasicConstrainedPolyZonotope<Scalar>(Y.center() * cP, std::move(G), std::move(E), std::move(A), std::move(b),
                                              std::move(R), std::move(merged.ids));
}

}  // namespace cpzreach
