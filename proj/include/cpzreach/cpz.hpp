#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "cpzreach/errors.hpp"
#include "cpzreach/factor.hpp"
#include "cpzreach/linalg.hpp"
#include "cpzreach/monomials.hpp"
#include "cpzreach/zonotope.hpp"

namespace cpzreach {

/// Constrained polynomial zonotope <c, G, E, A, b, R, id>:
///
///   { c + sum_i (prod_k a_k^E(k,i)) G(:,i)  |  sum_j (prod_k a_k^R(k,j)) A(:,j) = b,  a in [-1,1]^p }
///
/// Row k of E and R refers to the factor with id ids()[k]. An empty b means no
/// constraints; A and R then have zero columns.
template <typename Scalar>
class BasicConstrainedPolyZonotope {
 public:
  using Vector = VectorX<Scalar>;
  using Matrix = MatrixX<Scalar>;

  BasicConstrainedPolyZonotope() = default;

  BasicConstrainedPolyZonotope(Vector c, Matrix G, ExponentMatrix E, Matrix A, Vector b, ExponentMatrix R,
                               FactorIds ids)
      : c_(std::move(c)),
        G_(std::move(G)),
        E_(std::move(E)),
        A_(std::move(A)),
        b_(std::move(b)),
        R_(std::move(R)),
        ids_(std::move(ids)) {
    const auto p = static_cast<Index>(ids_.size());
    if (b_.size() == 0) {
      A_.resize(0, 0);
      R_.resize(p, 0);
    }
    if (G_.rows() != c_.size()) throw DimensionError("CPZ: generator rows != dimension");
    if (E_.cols() != G_.cols())
      throw DimensionError("CPZ: exponent columns (" + std::to_string(E_.cols()) + ") != generator count (" +
                           std::to_string(G_.cols()) + ")");
    if (E_.rows() != p) throw DimensionError("CPZ: exponent rows != id count");
    if (R_.rows() != p) throw DimensionError("CPZ: constraint exponent rows != id count");
    if (A_.cols() != R_.cols()) throw DimensionError("CPZ: constraint columns != constraint exponent columns");
    if (A_.rows() != b_.size()) throw DimensionError("CPZ: constraint rows != b length");
    if ((E_.array() < 0).any() || (R_.array() < 0).any()) throw DimensionError("CPZ: negative exponent");
    std::unordered_set<FactorId> seen;
    for (auto id : ids_)
      if (!seen.insert(id).second) throw DimensionError("CPZ: duplicate factor id " + std::to_string(id.value));
  }

  /// Unconstrained polynomial zonotope.
  BasicConstrainedPolyZonotope(Vector c, Matrix G, ExponentMatrix E, FactorIds ids)
      : BasicConstrainedPolyZonotope(std::move(c), std::move(G), std::move(E), Matrix(0, 0), Vector(0),
                                     ExponentMatrix(static_cast<Index>(ids.size()), 0), ids) {}

  static BasicConstrainedPolyZonotope point(Vector c) {
    const Index n = c.size();
    return BasicConstrainedPolyZonotope(std::move(c), Matrix(n, 0), ExponentMatrix(0, 0), FactorIds{});
  }

  Index dim() const { return c_.size(); }
  Index num_generators() const { return G_.cols(); }
  Index num_factors() const { return static_cast<Index>(ids_.size()); }
  Index num_constraints() const { return b_.size(); }
  Index num_constraint_terms() const { return A_.cols(); }
  bool has_constraints() const { return b_.size() > 0; }

  const Vector& center() const { return c_; }
  const Matrix& generators() const { return G_; }
  const ExponentMatrix& exponents() const { return E_; }
  const Matrix& constraint_matrix() const { return A_; }
  const Vector& constraint_vector() const { return b_; }
  const ExponentMatrix& constraint_exponents() const { return R_; }
  const FactorIds& ids() const { return ids_; }

 private:
  Vector c_;
  Matrix G_;
  ExponentMatrix E_;
  Matrix A_;
  Vector b_;
  ExponentMatrix R_;
  FactorIds ids_;
};

using ConstrainedPolyZonotope = BasicConstrainedPolyZonotope<double>;

/// Result of evaluating a set at a factor assignment.
template <typename PointType, typename Scalar>
struct BasicEvaluation {
  PointType point;
  Scalar constraint_residual = 0;  ///< max-norm of the constraint equation residual; 0 without constraints.
};

template <typename Scalar>
using CpzEvaluation = BasicEvaluation<VectorX<Scalar>, Scalar>;

/// Evaluates one CPZ at many aligned factor vectors without rebuilding monomial tables.
template <typename Scalar>
class CpzEvaluator {
 public:
  explicit CpzEvaluator(const BasicConstrainedPolyZonotope<Scalar>& P)
      : set_(&P), gen_(P.exponents()), con_(P.constraint_exponents()) {}

  /// `alpha` is laid out in the order of P.ids().
  CpzEvaluation<Scalar> operator()(const VectorX<Scalar>& alpha) const {
    if (alpha.size() != set_->num_factors()) throw DimensionError("evaluate: factor vector length != id count");
    CpzEvaluation<Scalar> out;
    gen_.evaluate(alpha, scratch_);
    out.point = set_->center();
    if (set_->num_generators() > 0) out.point.noalias() += set_->generators() * scratch_;
    out.constraint_residual = residual(alpha);
    return out;
  }

  Scalar residual(const VectorX<Scalar>& alpha) const {
    if (!set_->has_constraints()) return Scalar(0);
    con_.evaluate(alpha, scratch_);
    return (set_->constraint_matrix() * scratch_ - set_->constraint_vector()).cwiseAbs().maxCoeff();
  }

  const BasicConstrainedPolyZonotope<Scalar>& set() const { return *set_; }

 private:
  const BasicConstrainedPolyZonotope<Scalar>* set_;
  MonomialTable gen_;
  MonomialTable con_;
  mutable VectorX<Scalar> scratch_;
};

template <typename Scalar>
CpzEvaluation<Scalar> evaluate_aligned(const BasicConstrainedPolyZonotope<Scalar>& P, const VectorX<Scalar>& alpha) {
  return CpzEvaluator<Scalar>(P)(alpha);
}

/// Point and constraint residual of P at the assignment; every id of P must be assigned.
template <typename Scalar>
CpzEvaluation<Scalar> evaluate(const BasicConstrainedPolyZonotope<Scalar>& P,
                               const BasicFactorAssignment<Scalar>& assignment) {
  return evaluate_aligned(P, assignment.aligned(P.ids()));
}

namespace detail {

/// Merged id list [first, second \ first] and, for each entry of `second`, its row in the merged list.
struct IdMerge {
  FactorIds ids;
  std::vector<Index> second_rows;
};

inline IdMerge merge_id_lists(const FactorIds& first, const FactorIds& second) {
  IdMerge m;
  m.ids = first;
  std::unordered_map<FactorId, Index> pos;
  for (std::size_t i = 0; i < first.size(); ++i) pos.emplace(first[i], static_cast<Index>(i));
  m.second_rows.reserve(second.size());
  for (auto id : second) {
    auto it = pos.find(id);
    if (it != pos.end()) {
      m.second_rows.push_back(it->second);
    } else {
      const auto row = static_cast<Index>(m.ids.size());
      m.ids.push_back(id);
      pos.emplace(id, row);
      m.second_rows.push_back(row);
    }
  }
  return m;
}

/// [E; 0] with `total` rows.
inline ExponentMatrix pad_rows(const ExponentMatrix& E, Index total) {
  ExponentMatrix out = ExponentMatrix::Zero(total, E.cols());
  out.topRows(E.rows()) = E;
  return out;
}

/// Row k of E placed at row rows[k] of a zero matrix with `total` rows.
inline ExponentMatrix scatter_rows(const ExponentMatrix& E, const std::vector<Index>& rows, Index total) {
  ExponentMatrix out = ExponentMatrix::Zero(total, E.cols());
  for (Index k = 0; k < E.rows(); ++k) out.row(rows[static_cast<std::size_t>(k)]) = E.row(k);
  return out;
}

template <typename Scalar>
MatrixX<Scalar> block_diagonal(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  MatrixX<Scalar> out = MatrixX<Scalar>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

template <typename Derived1, typename Derived2>
auto hcat(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using Scalar = typename Derived1::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

template <typename Derived1, typename Derived2>
auto vcat(const Eigen::MatrixBase<Derived1>& a, const Eigen::MatrixBase<Derived2>& b) {
  using Scalar = typename Derived1::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Derived1::ColsAtCompileTime> out(a.rows() + b.rows(), a.cols());
  out << a, b;
  return out;
}

}  // namespace detail

/// Re-expresses P1 and P2 over the common id list [id1, id2 \ id1]; the sets are unchanged.
template <typename Scalar>
std::pair<BasicConstrainedPolyZonotope<Scalar>, BasicConstrainedPolyZonotope<Scalar>> merge_ids(
    const BasicConstrainedPolyZonotope<Scalar>& P1, const BasicConstrainedPolyZonotope<Scalar>& P2) {
  auto m = detail::merge_id_lists(P1.ids(), P2.ids());
  const auto a = static_cast<Index>(m.ids.size());
  BasicConstrainedPolyZonotope<Scalar> out1(P1.center(), P1.generators(), detail::pad_rows(P1.exponents(), a),
                                            P1.constraint_matrix(), P1.constraint_vector(),
                                            detail::pad_rows(P1.constraint_exponents(), a), m.ids);
  BasicConstrainedPolyZonotope<Scalar> out2(
      P2.center(), P2.generators(), detail::scatter_rows(P2.exponents(), m.second_rows, a), P2.constraint_matrix(),
      P2.constraint_vector(), detail::scatter_rows(P2.constraint_exponents(), m.second_rows, a), std::move(m.ids));
  return {std::move(out1), std::move(out2)};
}

/// Dependency-preserving sum: evaluates to P1(a) + P2(a) under the constraints of both.
template <typename Scalar>
BasicConstrainedPolyZonotope<Scalar> exact_add(const BasicConstrainedPolyZonotope<Scalar>& P1,
                                               const BasicConstrainedPolyZonotope<Scalar>& P2) {
  if (P1.dim() != P2.dim())
    throw DimensionError("exact_add: dimensions differ (" + std::to_string(P1.dim()) + " vs " +
                         std::to_string(P2.dim()) + ")");
  auto [Q1, Q2] = merge_ids(P1, P2);
  return BasicConstrainedPolyZonotope<Scalar>(
      Q1.center() + Q2.center(), detail::hcat(Q1.generators(), Q2.generators()),
      detail::hcat(Q1.exponents(), Q2.exponents()),
      detail::block_diagonal(Q1.constraint_matrix(), Q2.constraint_matrix()),
      detail::vcat(Q1.constraint_vector(), Q2.constraint_vector()),
      detail::hcat(Q1.constraint_exponents(), Q2.constraint_exponents()), Q1.ids());
}

/// Zonotope as a CPZ over fresh factors with identity exponents.
template <typename Scalar>
BasicConstrainedPolyZonotope<Scalar> zonotope_to_cpz(const BasicZonotope<Scalar>& Z, FactorContext& ctx) {
  const Index g = Z.num_generators();
  return BasicConstrainedPolyZonotope<Scalar>(Z.center(), Z.generators(), ExponentMatrix::Identity(g, g),
                                              ctx.allocate(static_cast<std::size_t>(g)));
}

/// Constrained zonotope as a CPZ; keeps its ids, E = R = I.
template <typename Scalar>
BasicConstrainedPolyZonotope<Scalar> cz_to_cpz(const BasicConstrainedZonotope<Scalar>& Z) {
  const Index h = Z.num_generators();
  if (Z.num_constraints() == 0)
    return BasicConstrainedPolyZonotope<Scalar>(Z.center(), Z.generators(), ExponentMatrix::Identity(h, h), Z.ids());
  return BasicConstrainedPolyZonotope<Scalar>(Z.center(), Z.generators(), ExponentMatrix::Identity(h, h),
                                              Z.constraint_matrix(), Z.constraint_vector(),
                                              ExponentMatrix::Identity(h, h), Z.ids());
}

/// P x Z: stacked centers, block generators, fresh degree-1 factors for Z, P's constraints unchanged.
template <typename Scalar>
BasicConstrainedPolyZonotope<Scalar> cartesian_product(const BasicConstrainedPolyZonotope<Scalar>& P,
                                                       const BasicZonotope<Scalar>& Z, FactorContext& ctx) {
  const Index n = P.dim(), m = Z.dim(), h = P.num_generators(), g = Z.num_generators(), p = P.num_factors();
  FactorIds ids = P.ids();
  for (auto id : ctx.allocate(static_cast<std::size_t>(g))) ids.push_back(id);

  MatrixX<Scalar> G = MatrixX<Scalar>::Zero(n + m, h + g);
  G.topLeftCorner(n, h) = P.generators();
  G.bottomRightCorner(m, g) = Z.generators();
  ExponentMatrix E = ExponentMatrix::Zero(p + g, h + g);
  E.topLeftCorner(p, h) = P.exponents();
  E.bottomRightCorner(g, g).setIdentity();

  return BasicConstrainedPolyZonotope<Scalar>(detail::vcat(P.center(), Z.center()), std::move(G), std::move(E),
                                              P.constraint_matrix(), P.constraint_vector(),
                                              detail::pad_rows(P.constraint_exponents(), p + g), std::move(ids));
}

template <typename Scalar>
struct BasicInterval {
  VectorX<Scalar> lo;
  VectorX<Scalar> hi;
  VectorX<Scalar> width() const { return hi - lo; }
};

/// Constraint-ignoring box c -/+ sum_i |G(:,i)|; a superset of P.
template <typename Scalar>
BasicInterval<Scalar> interval_enclosure(const BasicConstrainedPolyZonotope<Scalar>& P) {
  const VectorX<Scalar> radius = P.generators().cwiseAbs().rowwise().sum();
  return {P.center() - radius, P.center() + radius};
}

/// Merges generator columns with identical exponent columns (and constraint columns with
/// identical constraint exponents) by summing them; constant monomials fold into c or b.
/// Not applied anywhere by default.
template <typename Scalar>
BasicConstrainedPolyZonotope<Scalar> compact_generators(const BasicConstrainedPolyZonotope<Scalar>& P) {
  auto group = [](const ExponentMatrix& E, const MatrixX<Scalar>& M, VectorX<Scalar>& constant,
                  ExponentMatrix& E_out, MatrixX<Scalar>& M_out) {
    std::map<std::vector<int>, Index> slot;
    std::vector<std::vector<int>> keys;
    std::vector<VectorX<Scalar>> cols;
    for (Index i = 0; i < E.cols(); ++i) {
      if ((E.col(i).array() == 0).all()) {
        constant += M.col(i);
        continue;
      }
      std::vector<int> key(E.col(i).data(), E.col(i).data() + E.rows());
      auto [it, fresh] = slot.emplace(key, static_cast<Index>(keys.size()));
      if (fresh) {
        keys.push_back(std::move(key));
        cols.push_back(M.col(i));
      } else {
        cols[static_cast<std::size_t>(it->second)] += M.col(i);
      }
    }
    E_out.resize(E.rows(), static_cast<Index>(keys.size()));
    M_out.resize(M.rows(), static_cast<Index>(keys.size()));
    for (std::size_t j = 0; j < keys.size(); ++j) {
      for (Index k = 0; k < E.rows(); ++k) E_out(k, static_cast<Index>(j)) = keys[j][static_cast<std::size_t>(k)];
      M_out.col(static_cast<Index>(j)) = cols[j];
    }
  };

  VectorX<Scalar> c = P.center();
  ExponentMatrix E;
  MatrixX<Scalar> G;
  group(P.exponents(), P.generators(), c, E, G);
  if (!P.has_constraints()) return BasicConstrainedPolyZonotope<Scalar>(std::move(c), std::move(G), std::move(E), P.ids());

  VectorX<Scalar> shift = VectorX<Scalar>::Zero(P.num_constraints());
  ExponentMatrix R;
  MatrixX<Scalar> A;
  group(P.constraint_exponents(), P.constraint_matrix(), shift, R, A);
  return BasicConstrainedPolyZonotope<Scalar>(std::move(c), std::move(G), std::move(E), std::move(A),
                                              P.constraint_vector() - shift, std::move(R), P.ids());
}

}  // namespace cpzreach
