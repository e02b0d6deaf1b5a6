#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cpzreach/cpz.hpp"
#include "cpzreach/errors.hpp"
#include "cpzreach/factor.hpp"
#include "cpzreach/linalg.hpp"
#include "cpzreach/sampling.hpp"

namespace cpzreach {

/// Column-stacking vec(M).
template <typename Derived>
VectorX<typename Derived::Scalar> vectorize(const Eigen::MatrixBase<Derived>& M) {
  using Scalar = typename Derived::Scalar;
  const MatrixX<Scalar> dense = M;
  return Eigen::Map<const VectorX<Scalar>>(dense.data(), dense.size());
}

/// Inverse of vectorize for a matrix with `rows` rows. Throws ConvertError when
/// rows does not divide the length; callers then keep the vectorized form.
template <typename Derived>
MatrixX<typename Derived::Scalar> convert(const Eigen::MatrixBase<Derived>& v, Index rows) {
  using Scalar = typename Derived::Scalar;
  if (v.cols() != 1) throw DimensionError("convert: expected a column vector");
  if (rows <= 0 || v.size() % rows != 0)
    throw ConvertError("convert: " + std::to_string(rows) + " does not divide " + std::to_string(v.size()) +
                       "; keep the vectorized (single-column) form");
  const VectorX<Scalar> dense = v;
  return Eigen::Map<const MatrixX<Scalar>>(dense.data(), rows, v.size() / rows);
}

namespace detail {

template <typename Scalar>
void check_block_shapes(const std::vector<MatrixX<Scalar>>& blocks, Index rows, Index cols, const char* what) {
  for (const auto& b : blocks)
    if (b.rows() != rows || b.cols() != cols)
      throw DimensionError(std::string(what) + ": block shape " + std::to_string(b.rows()) + "x" +
                           std::to_string(b.cols()) + " != " + std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace detail

/// Matrix zonotope <C, G_1..G_gamma> = { C + sum_k a_k G_k : a in [-1,1]^gamma }.
template <typename Scalar>
class BasicMatrixZonotope {
 public:
  using Matrix = MatrixX<Scalar>;

  BasicMatrixZonotope() = default;
  BasicMatrixZonotope(Matrix C, std::vector<Matrix> G) : C_(std::move(C)), G_(std::move(G)) {
    detail::check_block_shapes(G_, C_.rows(), C_.cols(), "MatrixZonotope generator");
  }

  Index rows() const { return C_.rows(); }
  Index cols() const { return C_.cols(); }
  Index num_generators() const { return static_cast<Index>(G_.size()); }
  const Matrix& center() const { return C_; }
  const std::vector<Matrix>& generators() const { return G_; }

 private:
  Matrix C_;
  std::vector<Matrix> G_;
};

/// Constrained matrix zonotope <C, G, A, B, id>: factors additionally satisfy sum_k a_k A_k = B.
/// Without constraints the A list is empty and B is 0x0.
template <typename Scalar>
class BasicConstrainedMatZonotope {
 public:
  using Matrix = MatrixX<Scalar>;

  BasicConstrainedMatZonotope() = default;

  BasicConstrainedMatZonotope(Matrix C, std::vector<Matrix> G, std::vector<Matrix> A, Matrix B, FactorIds ids)
      : C_(std::move(C)), G_(std::move(G)), A_(std::move(A)), B_(std::move(B)), ids_(std::move(ids)) {
    detail::check_block_shapes(G_, C_.rows(), C_.cols(), "ConstrainedMatZonotope generator");
    if (ids_.size() != G_.size()) throw DimensionError("ConstrainedMatZonotope: id count != generator count");
    if (B_.size() == 0) {
      A_.clear();
      B_.resize(0, 0);
    } else {
      if (A_.size() != G_.size()) throw DimensionError("ConstrainedMatZonotope: constraint block count != generators");
      detail::check_block_shapes(A_, B_.rows(), B_.cols(), "ConstrainedMatZonotope constraint");
    }
  }

  BasicConstrainedMatZonotope(const BasicMatrixZonotope<Scalar>& M, FactorIds ids)
      : BasicConstrainedMatZonotope(M.center(), M.generators(), {}, Matrix(0, 0), std::move(ids)) {}

  Index rows() const { return C_.rows(); }
  Index cols() const { return C_.cols(); }
  Index num_generators() const { return static_cast<Index>(G_.size()); }
  bool has_constraints() const { return B_.size() > 0; }
  /// n_c * n_a, the number of scalar constraint equations.
  Index num_constraint_equations() const { return B_.size(); }

  const Matrix& center() const { return C_; }
  const std::vector<Matrix>& generators() const { return G_; }
  const std::vector<Matrix>& constraint_blocks() const { return A_; }
  const Matrix& constraint_rhs() const { return B_; }
  const FactorIds& ids() const { return ids_; }

 private:
  Matrix C_;
  std::vector<Matrix> G_;
  std::vector<Matrix> A_;
  Matrix B_;
  FactorIds ids_;
};

/// Constrained polynomial matrix zonotope <C, G, E, A, B, R, id>.
template <typename Scalar>
class BasicConstrainedPolyMatZonotope {
 public:
  using Matrix = MatrixX<Scalar>;

  BasicConstrainedPolyMatZonotope() = default;

  BasicConstrainedPolyMatZonotope(Matrix C, std::vector<Matrix> G, ExponentMatrix E, std::vector<Matrix> A, Matrix B,
                                  ExponentMatrix R, FactorIds ids)
      : C_(std::move(C)),
        G_(std::move(G)),
        E_(std::move(E)),
        A_(std::move(A)),
        B_(std::move(B)),
        R_(std::move(R)),
        ids_(std::move(ids)) {
    const auto p = static_cast<Index>(ids_.size());
    detail::check_block_shapes(G_, C_.rows(), C_.cols(), "ConstrainedPolyMatZonotope generator");
    if (B_.size() == 0) {
      A_.clear();
      B_.resize(0, 0);
      R_.resize(p, 0);
    }
    detail::check_block_shapes(A_, B_.rows(), B_.cols(), "ConstrainedPolyMatZonotope constraint");
    if (E_.rows() != p || E_.cols() != static_cast<Index>(G_.size()))
      throw DimensionError("ConstrainedPolyMatZonotope: exponent matrix must be (ids x generators)");
    if (R_.rows() != p || R_.cols() != static_cast<Index>(A_.size()))
      throw DimensionError("ConstrainedPolyMatZonotope: constraint exponents must be (ids x constraint blocks)");
  }

  Index rows() const { return C_.rows(); }
  Index cols() const { return C_.cols(); }
  Index num_generators() const { return static_cast<Index>(G_.size()); }
  Index num_factors() const { return static_cast<Index>(ids_.size()); }
  Index num_constraint_blocks() const { return static_cast<Index>(A_.size()); }
  bool has_constraints() const { return B_.size() > 0; }

  const Matrix& center() const { return C_; }
  const std::vector<Matrix>& generators() const { return G_; }
  const ExponentMatrix& exponents() const { return E_; }
  const std::vector<Matrix>& constraint_blocks() const { return A_; }
  const Matrix& constraint_rhs() const { return B_; }
  const ExponentMatrix& constraint_exponents() const { return R_; }
  const FactorIds& ids() const { return ids_; }

 private:
  Matrix C_;
  std::vector<Matrix> G_;
  ExponentMatrix E_;
  std::vector<Matrix> A_;
  Matrix B_;
  ExponentMatrix R_;
  FactorIds ids_;
};

using MatrixZonotope = BasicMatrixZonotope<double>;
using ConstrainedMatZonotope = BasicConstrainedMatZonotope<double>;
using ConstrainedPolyMatZonotope = BasicConstrainedPolyMatZonotope<double>;

template <typename Scalar>
using MatrixEvaluation = BasicEvaluation<MatrixX<Scalar>, Scalar>;

/// Wide concatenation [G_1 ... G_gamma] (m x n*gamma).
template <typename Scalar>
MatrixX<Scalar> concat_blocks(const std::vector<MatrixX<Scalar>>& blocks, Index rows, Index cols) {
  MatrixX<Scalar> out(rows, cols * static_cast<Index>(blocks.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) out.middleCols(static_cast<Index>(i) * cols, cols) = blocks[i];
  return out;
}

/// Splits a wide concatenation into blocks of `cols` columns.
template <typename Derived>
std::vector<MatrixX<typename Derived::Scalar>> split_blocks(const Eigen::MatrixBase<Derived>& wide, Index cols) {
  if (cols <= 0 || wide.cols() % cols != 0) throw DimensionError("split_blocks: width not a multiple of block width");
  std::vector<MatrixX<typename Derived::Scalar>> out;
  for (Index j = 0; j < wide.cols(); j += cols) out.emplace_back(wide.middleCols(j, cols));
  return out;
}

/// Matrix zonotope with fresh ids attached.
template <typename Scalar>
BasicConstrainedMatZonotope<Scalar> to_cmz(const BasicMatrixZonotope<Scalar>& M, FactorContext& ctx) {
  return BasicConstrainedMatZonotope<Scalar>(M, ctx.allocate(static_cast<std::size_t>(M.num_generators())));
}

/// Aligned-vector evaluation of a CMZ (all exponents 1).
template <typename Scalar>
MatrixEvaluation<Scalar> evaluate_aligned(const BasicConstrainedMatZonotope<Scalar>& N, const VectorX<Scalar>& alpha) {
  if (alpha.size() != N.num_generators()) throw DimensionError("evaluate: factor vector length != generator count");
  MatrixEvaluation<Scalar> out{N.center(), Scalar(0)};
  for (Index k = 0; k < N.num_generators(); ++k) out.point += alpha(k) * N.generators()[static_cast<std::size_t>(k)];
  if (N.has_constraints()) {
    MatrixX<Scalar> lhs = -N.constraint_rhs();
    for (Index k = 0; k < N.num_generators(); ++k) lhs += alpha(k) * N.constraint_blocks()[static_cast<std::size_t>(k)];
    out.constraint_residual = lhs.cwiseAbs().maxCoeff();
  }
  return out;
}

template <typename Scalar>
MatrixEvaluation<Scalar> evaluate(const BasicConstrainedMatZonotope<Scalar>& N,
                                  const BasicFactorAssignment<Scalar>& assignment) {
  return evaluate_aligned(N, assignment.aligned(N.ids()));
}

template <typename Scalar>
MatrixEvaluation<Scalar> evaluate_aligned(const BasicConstrainedPolyMatZonotope<Scalar>& Y,
                                          const VectorX<Scalar>& alpha) {
  if (alpha.size() != Y.num_factors()) throw DimensionError("evaluate: factor vector length != id count");
  const VectorX<Scalar> mono = MonomialTable(Y.exponents()).evaluate(alpha);
  MatrixEvaluation<Scalar> out{Y.center(), Scalar(0)};
  for (Index i = 0; i < Y.num_generators(); ++i) out.point += mono(i) * Y.generators()[static_cast<std::size_t>(i)];
  if (Y.has_constraints()) {
    const VectorX<Scalar> cmono = MonomialTable(Y.constraint_exponents()).evaluate(alpha);
    MatrixX<Scalar> lhs = -Y.constraint_rhs();
    for (Index j = 0; j < Y.num_constraint_blocks(); ++j)
      lhs += cmono(j) * Y.constraint_blocks()[static_cast<std::size_t>(j)];
    out.constraint_residual = lhs.cwiseAbs().maxCoeff();
  }
  return out;
}

template <typename Scalar>
MatrixEvaluation<Scalar> evaluate(const BasicConstrainedPolyMatZonotope<Scalar>& Y,
                                  const BasicFactorAssignment<Scalar>& assignment) {
  return evaluate_aligned(Y, assignment.aligned(Y.ids()));
}

template <typename Scalar>
MatrixEvaluation<Scalar> cmz_evaluate(const BasicConstrainedMatZonotope<Scalar>& N,
                                      const BasicFactorAssignment<Scalar>& assignment) {
  return evaluate(N, assignment);
}

template <typename Scalar>
MatrixEvaluation<Scalar> cmz_evaluate(const BasicConstrainedPolyMatZonotope<Scalar>& Y,
                                      const BasicFactorAssignment<Scalar>& assignment) {
  return evaluate(Y, assignment);
}

/// CMZ as a CPMZ with E = R = I; ids and represented set unchanged.
template <typename Scalar>
BasicConstrainedPolyMatZonotope<Scalar> cmz_to_cpmz(const BasicConstrainedMatZonotope<Scalar>& N) {
  const Index g = N.num_generators();
  const ExponentMatrix I = ExponentMatrix::Identity(g, g);
  if (!N.has_constraints())
    return BasicConstrainedPolyMatZonotope<Scalar>(N.center(), N.generators(), I, {}, MatrixX<Scalar>(0, 0),
                                                   ExponentMatrix(g, 0), N.ids());
  return BasicConstrainedPolyMatZonotope<Scalar>(N.center(), N.generators(), I, N.constraint_blocks(),
                                                 N.constraint_rhs(), I, N.ids());
}

/// The CMZ viewed as a CPZ in R^{mn} over vec(.): same ids, E = R = I.
template <typename Scalar>
BasicConstrainedPolyZonotope<Scalar> vectorized_cpz(const BasicConstrainedMatZonotope<Scalar>& N) {
  const Index g = N.num_generators();
  MatrixX<Scalar> G(N.rows() * N.cols(), g);
  for (Index k = 0; k < g; ++k) G.col(k) = vectorize(N.generators()[static_cast<std::size_t>(k)]);
  const ExponentMatrix I = ExponentMatrix::Identity(g, g);
  if (!N.has_constraints()) return BasicConstrainedPolyZonotope<Scalar>(vectorize(N.center()), std::move(G), I, N.ids());
  MatrixX<Scalar> A(N.num_constraint_equations(), g);
  for (Index k = 0; k < g; ++k) A.col(k) = vectorize(N.constraint_blocks()[static_cast<std::size_t>(k)]);
  return BasicConstrainedPolyZonotope<Scalar>(vectorize(N.center()), std::move(G), I, std::move(A),
                                              vectorize(N.constraint_rhs()), I, N.ids());
}

/// Feasible members of N (with the factor vectors that realize them, columns aligned with N.ids()).
template <typename Scalar>
struct MatrixSamples {
  std::vector<MatrixX<Scalar>> members;
  MatrixX<Scalar> factors;
};

template <typename Scalar>
MatrixSamples<Scalar> sample_cmz(const BasicConstrainedMatZonotope<Scalar>& N, std::size_t count, Rng& rng,
                                 const SampleOptions& opts = {}) {
  const auto P = vectorized_cpz(N);
  MatrixSamples<Scalar> out;
  out.factors = sample_factors(P, count, rng, opts);
  for (Index s = 0; s < out.factors.cols(); ++s)
    out.members.push_back(evaluate_aligned(N, VectorX<Scalar>(out.factors.col(s))).point);
  return out;
}

}  // namespace cpzreach
