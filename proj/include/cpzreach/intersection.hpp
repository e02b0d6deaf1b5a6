#pragma once

#include <string>
#include <vector>

#include "cpzreach/errors.hpp"
#include "cpzreach/matrix_sets.hpp"

namespace cpzreach {

/// N1 ∩ N2 as a CMZ over fresh factors (a1, a2):
///
///   C1 + sum a1_k G1_k   subject to   [vec A1; 0; vec G1] a1 + [0; vec A2; -vec G2] a2 = [vec B1; vec B2; vec(C2 - C1)]
///
/// Constraint blocks are kept vectorized (one column each), so the result has
/// nc1*na1 + nc2*na2 + m*n constraint rows and na = 1.
template <typename Scalar>
BasicConstrainedMatZonotope<Scalar> cmz_intersect(const BasicConstrainedMatZonotope<Scalar>& N1,
                                                  const BasicConstrainedMatZonotope<Scalar>& N2, FactorContext& ctx) {
  if (N1.rows() != N2.rows() || N1.cols() != N2.cols())
    throw DimensionError("cmz_intersect: shapes " + std::to_string(N1.rows()) + "x" + std::to_string(N1.cols()) +
                         " and " + std::to_string(N2.rows()) + "x" + std::to_string(N2.cols()) + " differ");
  using Matrix = MatrixX<Scalar>;
  const Index r1 = N1.num_constraint_equations(), r2 = N2.num_constraint_equations();
  const Index mn = N1.rows() * N1.cols();
  const Index rows = r1 + r2 + mn;

  std::vector<Matrix> G = N1.generators();
  std::vector<Matrix> A;
  A.reserve(static_cast<std::size_t>(N1.num_generators() + N2.num_generators()));
  for (Index k = 0; k < N1.num_generators(); ++k) {
    Matrix col = Matrix::Zero(rows, 1);
    if (r1 > 0) col.topRows(r1) = vectorize(N1.constraint_blocks()[static_cast<std::size_t>(k)]);
    col.bottomRows(mn) = vectorize(N1.generators()[static_cast<std::size_t>(k)]);
    A.push_back(std::move(col));
  }
  for (Index k = 0; k < N2.num_generators(); ++k) {
    G.push_back(Matrix::Zero(N1.rows(), N1.cols()));
    Matrix col = Matrix::Zero(rows, 1);
    if (r2 > 0) col.middleRows(r1, r2) = vectorize(N2.constraint_blocks()[static_cast<std::size_t>(k)]);
    col.bottomRows(mn) = -vectorize(N2.generators()[static_cast<std::size_t>(k)]);
    A.push_back(std::move(col));
  }
  Matrix B(rows, 1);
  if (r1 > 0) B.topRows(r1) = vectorize(N1.constraint_rhs());
  if (r2 > 0) B.middleRows(r1, r2) = vectorize(N2.constraint_rhs());
  B.bottomRows(mn) = vectorize(N2.center() - N1.center());

  auto ids = ctx.allocate(G.size());
  return BasicConstrainedMatZonotope<Scalar>(N1.center(), std::move(G), std::move(A), std::move(B), std::move(ids));
}

}  // namespace cpzreach
