#pragma once

#include <string>
#include <utility>

#include "cpzreach/errors.hpp"
#include "cpzreach/factor.hpp"
#include "cpzreach/linalg.hpp"

namespace cpzreach {

/// Zonotope <c, G> = { c + G a : a in [-1, 1]^gamma }. G may have zero columns.
template <typename Scalar>
class BasicZonotope {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;

  BasicZonotope() = default;

  explicit BasicZonotope(Vector center) : c_(std::move(center)), G_(c_.size(), 0) {}

  BasicZonotope(Vector center, Matrix generators) : c_(std::move(center)), G_(std::move(generators)) {
    if (G_.rows() != c_.size())
      throw DimensionError("Zonotope: generator rows (" + std::to_string(G_.rows()) + ") != dimension (" +
                           std::to_string(c_.size()) + ")");
  }

  Index dim() const { return c_.size(); }
  Index num_generators() const { return G_.cols(); }
  const Vector& center() const { return c_; }
  const Matrix& generators() const { return G_; }

  /// c + G a for a factor vector a in [-1, 1]^gamma.
  Vector point(const Vector& coeffs) const {
    if (coeffs.size() != num_generators()) throw DimensionError("Zonotope::point: coefficient count mismatch");
    return c_ + G_ * coeffs;
  }

 private:
  Vector c_;
  Matrix G_;
};

/// Constrained zonotope <c, G, A, b, id>: factors additionally satisfy A a = b.
template <typename Scalar>
class BasicConstrainedZonotope {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;

  BasicConstrainedZonotope() = default;

  BasicConstrainedZonotope(Vector c, Matrix G, Matrix A, Vector b, FactorIds ids)
      : c_(std::move(c)), G_(std::move(G)), A_(std::move(A)), b_(std::move(b)), ids_(std::move(ids)) {
    if (G_.rows() != c_.size()) throw DimensionError("ConstrainedZonotope: generator rows != dimension");
    if (b_.size() == 0) A_.resize(0, G_.cols());
    if (A_.cols() != G_.cols()) throw DimensionError("ConstrainedZonotope: constraint columns != generator count");
    if (A_.rows() != b_.size()) throw DimensionError("ConstrainedZonotope: constraint rows != b length");
    if (static_cast<Index>(ids_.size()) != G_.cols()) throw DimensionError("ConstrainedZonotope: id count != h");
  }

  BasicConstrainedZonotope(const BasicZonotope<Scalar>& z, FactorIds ids)
      : BasicConstrainedZonotope(z.center(), z.generators(), Matrix(0, z.num_generators()), Vector(0),
                                 std::move(ids)) {}

  Index dim() const { return c_.size(); }
  Index num_generators() const { return G_.cols(); }
  Index num_constraints() const { return b_.size(); }
  const Vector& center() const { return c_; }
  const Matrix& generators() const { return G_; }
  const Matrix& constraint_matrix() const { return A_; }
  const Vector& constraint_vector() const { return b_; }
  const FactorIds& ids() const { return ids_; }

 private:
  Vector c_;
  Matrix G_;
  Matrix A_;
  Vector b_;
  FactorIds ids_;
};

using Zonotope = BasicZonotope<double>;
using ConstrainedZonotope = BasicConstrainedZonotope<double>;

}  // namespace cpzreach
