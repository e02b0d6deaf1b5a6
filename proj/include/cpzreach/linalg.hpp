#pragma once

#include <algorithm>
#include <limits>

#include <Eigen/Dense>

namespace cpzreach {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Nonnegative integer exponents; rows index factors, columns index monomials.
using ExponentMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

using Eigen::Index;

/// Singular values above max(rows, cols) * eps * sigma_max count toward rank.
template <typename Derived>
typename Derived::Scalar rank_threshold(const Eigen::MatrixBase<Derived>& singular_values, Index rows, Index cols) {
  using Scalar = typename Derived::Scalar;
  if (singular_values.size() == 0) return Scalar(0);
  return static_cast<Scalar>(std::max(rows, cols)) * std::numeric_limits<Scalar>::epsilon() * singular_values.maxCoeff();
}

template <typename Derived>
Index numerical_rank(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<MatrixX<Scalar>> svd(m.eval());
  const auto& s = svd.singularValues();
  const Scalar thr = rank_threshold(s, m.rows(), m.cols());
  return (s.array() > thr).count();
}

/// Moore-Penrose pseudoinverse through the SVD, with the same threshold as numerical_rank.
template <typename Derived>
MatrixX<typename Derived::Scalar> pseudo_inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  if (m.size() == 0) return MatrixX<Scalar>::Zero(m.cols(), m.rows());
  Eigen::BDCSVD<MatrixX<Scalar>> svd(m.eval(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const Scalar thr = rank_threshold(s, m.rows(), m.cols());
  VectorX<Scalar> inv = VectorX<Scalar>::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) inv(i) = Scalar(1) / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

/// Orthonormal basis of the null space of `m` (columns).
template <typename Derived>
MatrixX<typename Derived::Scalar> null_space(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Index n = m.cols();
  if (m.rows() == 0 || n == 0) return MatrixX<Scalar>::Identity(n, n);
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(m.eval(), Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const Scalar thr = rank_threshold(s, m.rows(), m.cols());
  const Index rank = (s.array() > thr).count();
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace cpzreach
