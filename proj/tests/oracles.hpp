#pragma once

// Reference evaluators written directly from the set definitions, with none of
// the library's monomial tables or id merging, plus random set generators.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cpzreach/cpzreach.hpp"

namespace cpzreach::test {

using Values = std::map<std::uint64_t, double>;

inline double monomial(const ExponentMatrix& E, Index col, const FactorIds& ids, const Values& v) {
  double m = 1.0;
  for (Index k = 0; k < E.rows(); ++k) {
    const int e = E(k, col);
    double f = 1.0;
    for (int r = 0; r < e; ++r) f *= v.at(ids[static_cast<std::size_t>(k)].value);
    m *= f;
  }
  return m;
}

struct NaivePoint {
  Eigen::VectorXd point;
  double residual = 0;
};

inline NaivePoint naive_eval(const ConstrainedPolyZonotope& P, const Values& v) {
  NaivePoint out{P.center(), 0.0};
  for (Index i = 0; i < P.num_generators(); ++i) out.point += monomial(P.exponents(), i, P.ids(), v) * P.generators().col(i);
  if (P.has_constraints()) {
    Eigen::VectorXd r = -P.constraint_vector();
    for (Index j = 0; j < P.num_constraint_terms(); ++j)
      r += monomial(P.constraint_exponents(), j, P.ids(), v) * P.constraint_matrix().col(j);
    out.residual = r.cwiseAbs().maxCoeff();
  }
  return out;
}

struct NaiveMatrix {
  Eigen::MatrixXd value;
  double residual = 0;
};

inline NaiveMatrix naive_eval(const ConstrainedPolyMatZonotope& Y, const Values& v) {
  NaiveMatrix out{Y.center(), 0.0};
  for (Index i = 0; i < Y.num_generators(); ++i)
    out.value += monomial(Y.exponents(), i, Y.ids(), v) * Y.generators()[static_cast<std::size_t>(i)];
  if (Y.has_constraints()) {
    Eigen::MatrixXd r = -Y.constraint_rhs();
    for (Index j = 0; j < Y.num_constraint_blocks(); ++j)
      r += monomial(Y.constraint_exponents(), j, Y.ids(), v) * Y.constraint_blocks()[static_cast<std::size_t>(j)];
    out.residual = r.cwiseAbs().maxCoeff();
  }
  return out;
}

inline NaiveMatrix naive_eval(const ConstrainedMatZonotope& N, const Values& v) {
  NaiveMatrix out{N.center(), 0.0};
  for (Index i = 0; i < N.num_generators(); ++i)
    out.value += v.at(N.ids()[static_cast<std::size_t>(i)].value) * N.generators()[static_cast<std::size_t>(i)];
  if (N.has_constraints()) {
    Eigen::MatrixXd r = -N.constraint_rhs();
    for (Index i = 0; i < N.num_generators(); ++i)
      r += v.at(N.ids()[static_cast<std::size_t>(i)].value) * N.constraint_blocks()[static_cast<std::size_t>(i)];
    out.residual = r.cwiseAbs().maxCoeff();
  }
  return out;
}

inline FactorAssignment to_assignment(const Values& v) {
  FactorAssignment a;
  for (const auto& [id, x] : v) a.set(FactorId{id}, x);
  return a;
}

inline Values random_values(const std::vector<std::uint64_t>& ids, Rng& rng) {
  Values v;
  for (auto id : ids) v[id] = rng.symmetric();
  return v;
}

inline Eigen::MatrixXd random_matrix(Index r, Index c, Rng& rng, double scale = 1.0) {
  Eigen::MatrixXd m(r, c);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.symmetric();
  return m;
}

inline ExponentMatrix random_exponents(Index p, Index h, Rng& rng, int max_degree) {
  ExponentMatrix E(p, h);
  for (Index i = 0; i < E.size(); ++i) E.data()[i] = static_cast<int>(rng.index(static_cast<std::uint64_t>(max_degree) + 1));
  return E;
}

/// Degree-1 constraint exponents: each column a standard basis vector.
inline ExponentMatrix basis_exponents(Index p, Index q, Rng& rng) {
  ExponentMatrix R = ExponentMatrix::Zero(p, q);
  for (Index j = 0; j < q; ++j) R(static_cast<Index>(rng.index(static_cast<std::uint64_t>(p))), j) = 1;
  return R;
}

/// Distinct ids drawn from a shared pool {1..pool} (so sets overlap) plus fresh ids above it.
inline FactorIds random_ids(Index count, std::uint64_t pool, std::uint64_t& fresh, Rng& rng) {
  FactorIds ids;
  while (static_cast<Index>(ids.size()) < count) {
    FactorId id = rng.bernoulli(0.5) ? FactorId{1 + rng.index(pool)} : FactorId{fresh++};
    bool dup = false;
    for (auto x : ids) dup = dup || x == id;
    if (!dup) ids.push_back(id);
  }
  return ids;
}

inline std::vector<std::uint64_t> id_values(const FactorIds& ids) {
  std::vector<std::uint64_t> out;
  for (auto id : ids) out.push_back(id.value);
  return out;
}

inline std::vector<std::uint64_t> union_ids(const FactorIds& a, const FactorIds& b) {
  std::vector<std::uint64_t> out = id_values(a);
  for (auto id : b) {
    bool seen = false;
    for (auto x : out) seen = seen || x == id.value;
    if (!seen) out.push_back(id.value);
  }
  return out;
}

inline ConstrainedPolyZonotope random_cpz(Index n, Rng& rng, std::uint64_t pool, std::uint64_t& fresh,
                                          bool constrained, int max_degree = 3) {
  const Index p = 1 + static_cast<Index>(rng.index(4));
  const Index h = static_cast<Index>(rng.index(6));
  const FactorIds ids = random_ids(p, pool, fresh, rng);
  const Eigen::VectorXd c = random_matrix(n, 1, rng);
  const Eigen::MatrixXd G = random_matrix(n, h, rng);
  const ExponentMatrix E = random_exponents(p, h, rng, max_degree);
  if (!constrained) return ConstrainedPolyZonotope(c, G, E, ids);
  const Index nc = 1 + static_cast<Index>(rng.index(3)), q = 1 + static_cast<Index>(rng.index(4));
  return ConstrainedPolyZonotope(c, G, E, random_matrix(nc, q, rng), random_matrix(nc, 1, rng),
                                 random_exponents(p, q, rng, max_degree), ids);
}

inline ConstrainedPolyMatZonotope random_cpmz(Index rows, Index cols, Rng& rng, std::uint64_t pool,
                                              std::uint64_t& fresh, bool constrained, int max_degree = 3) {
  const Index p = 1 + static_cast<Index>(rng.index(4));
  const Index gamma = static_cast<Index>(rng.index(6));
  const FactorIds ids = random_ids(p, pool, fresh, rng);
  std::vector<Eigen::MatrixXd> G;
  for (Index i = 0; i < gamma; ++i) G.push_back(random_matrix(rows, cols, rng));
  const ExponentMatrix E = random_exponents(p, gamma, rng, max_degree);
  if (!constrained)
    return ConstrainedPolyMatZonotope(random_matrix(rows, cols, rng), G, E, {}, Eigen::MatrixXd(0, 0),
                                      ExponentMatrix(p, 0), ids);
  const Index nc = 1 + static_cast<Index>(rng.index(2)), na = 1 + static_cast<Index>(rng.index(2));
  const Index q = 1 + static_cast<Index>(rng.index(4));
  std::vector<Eigen::MatrixXd> A;
  for (Index j = 0; j < q; ++j) A.push_back(random_matrix(nc, na, rng));
  return ConstrainedPolyMatZonotope(random_matrix(rows, cols, rng), G, E, A, random_matrix(nc, na, rng),
                                    random_exponents(p, q, rng, max_degree), ids);
}

/// Unconstrained or constrained CMZ whose constraints are satisfied by some point of the box.
inline ConstrainedMatZonotope random_feasible_cmz(Index rows, Index cols, Rng& rng, FactorContext& ctx,
                                                  bool constrained) {
  const Index gamma = 1 + static_cast<Index>(rng.index(4));
  std::vector<Eigen::MatrixXd> G;
  for (Index i = 0; i < gamma; ++i) G.push_back(random_matrix(rows, cols, rng));
  const Eigen::MatrixXd C = random_matrix(rows, cols, rng, 0.5);
  if (!constrained) return ConstrainedMatZonotope(C, G, {}, Eigen::MatrixXd(0, 0), ctx.allocate(G.size()));
  const Index nc = 1, na = 1 + static_cast<Index>(rng.index(2));
  std::vector<Eigen::MatrixXd> A;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(nc, na);
  for (Index i = 0; i < gamma; ++i) {
    A.push_back(random_matrix(nc, na, rng));
    B += 0.5 * rng.symmetric() * A.back();
  }
  return ConstrainedMatZonotope(C, G, A, B, ctx.allocate(G.size()));
}

}  // namespace cpzreach::test
