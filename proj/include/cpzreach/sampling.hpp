#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cpzreach/box_lsq.hpp"
#include "cpzreach/cpz.hpp"
#include "cpzreach/rng.hpp"

namespace cpzreach {

struct SampleOptions {
  /// Probability that a sample is pushed to the boundary: a chord endpoint for the
  /// constrained factors and a random vertex for the free ones.
  double boundary_fraction = 0.1;
  /// Hit-and-run moves between two emitted samples.
  int thinning = 10;
  /// Every returned sample satisfies the constraints to this max-norm residual.
  double residual_tolerance = 1e-8;
  /// Budget of candidate draws before giving up.
  std::size_t max_attempts = 200000;
};

/// Hit-and-run chain on { x in [-1,1]^d : A x = b }.
template <typename Scalar>
class PolytopeChain {
 public:
  PolytopeChain(MatrixX<Scalar> A, VectorX<Scalar> b, Scalar feasibility_tolerance)
      : A_(std::move(A)), b_(std::move(b)), tol_(feasibility_tolerance) {
    const Index d = A_.cols();
    bool found = false;
    Scalar best = std::numeric_limits<Scalar>::infinity();
    // Prefer a start point well inside the box so the first chords are not degenerate.
    for (Scalar shrink : {Scalar(0.5), Scalar(0.9), Scalar(0.99), Scalar(1)}) {
      const VectorX<Scalar> bound = VectorX<Scalar>::Constant(d, shrink);
      auto sol = solve_box_lsq<Scalar>(A_, b_, -bound, bound);
      const Scalar res = max_residual(sol.x);
      best = std::min(best, res);
      if (res <= tol_) {
        start_ = sol.x;
        found = true;
        break;
      }
    }
    if (!found)
      throw InfeasibleError("constraints admit no factor values in [-1, 1] (least residual " + std::to_string(best) +
                            ")");
    basis_ = null_space(A_);
    pinv_ = pseudo_inverse(A_);
    current_ = start_;
  }

  Index dim() const { return A_.cols(); }
  Index free_directions() const { return basis_.cols(); }
  const VectorX<Scalar>& start() const { return start_; }

  /// Advances `steps` hit-and-run moves and returns the state, or a chord endpoint through it.
  VectorX<Scalar> next(Rng& rng, int steps, double boundary_fraction) {
    for (int i = 0; i < steps; ++i) move(rng);
    if (basis_.cols() > 0 && rng.bernoulli(boundary_fraction)) {
      const VectorX<Scalar> dir = direction(rng);
      auto [lo, hi] = chord(dir);
      VectorX<Scalar> edge = current_ + (rng.bernoulli(0.5) ? lo : hi) * dir;
      edge = edge.cwiseMax(Scalar(-1)).cwiseMin(Scalar(1));
      if (max_residual(edge) <= tol_) return edge;
    }
    return current_;
  }

  Scalar max_residual(const VectorX<Scalar>& x) const {
    return A_.rows() == 0 ? Scalar(0) : (A_ * x - b_).cwiseAbs().maxCoeff();
  }

 private:
  VectorX<Scalar> direction(Rng& rng) const {
    VectorX<Scalar> z(basis_.cols());
    for (Index i = 0; i < z.size(); ++i) z(i) = static_cast<Scalar>(rng.normal());
    VectorX<Scalar> dir = basis_ * z;
    const Scalar nrm = dir.norm();
    return nrm > Scalar(0) ? VectorX<Scalar>(dir / nrm) : dir;
  }

  std::pair<Scalar, Scalar> chord(const VectorX<Scalar>& dir) const {
    Scalar lo = -std::numeric_limits<Scalar>::infinity(), hi = std::numeric_limits<Scalar>::infinity();
    for (Index i = 0; i < dir.size(); ++i) {
      if (std::abs(dir(i)) < Scalar(1e-14)) continue;
      Scalar t1 = (Scalar(-1) - current_(i)) / dir(i), t2 = (Scalar(1) - current_(i)) / dir(i);
      if (t1 > t2) std::swap(t1, t2);
      lo = std::max(lo, t1);
      hi = std::min(hi, t2);
    }
    if (!(lo <= hi)) return {Scalar(0), Scalar(0)};
    return {lo, hi};
  }

  void move(Rng& rng) {
    if (basis_.cols() == 0) return;
    const VectorX<Scalar> dir = direction(rng);
    auto [lo, hi] = chord(dir);
    const Scalar t = lo + (hi - lo) * static_cast<Scalar>(rng.uniform01());
    current_ += t * dir;
    if (A_.rows() > 0) {
      const VectorX<Scalar> r = A_ * current_ - b_;
      if (r.cwiseAbs().maxCoeff() > Scalar(0.01) * tol_) current_ -= pinv_ * r;
    }
    current_ = current_.cwiseMax(Scalar(-1)).cwiseMin(Scalar(1));
    if (max_residual(current_) > Scalar(0.1) * tol_) current_ = start_;
  }

  MatrixX<Scalar> A_;
  VectorX<Scalar> b_;
  Scalar tol_;
  VectorX<Scalar> start_;
  VectorX<Scalar> current_;
  MatrixX<Scalar> basis_;
  MatrixX<Scalar> pinv_;
};

namespace detail {

/// Rewrites degree-1 constraints sum_j A(:,j) a_{k(j)} = b as a linear system over the factors.
template <typename Scalar>
std::pair<MatrixX<Scalar>, VectorX<Scalar>> linear_constraint_system(const BasicConstrainedPolyZonotope<Scalar>& P,
                                                                     const MonomialTable& con) {
  MatrixX<Scalar> A = MatrixX<Scalar>::Zero(P.num_constraints(), P.num_factors());
  VectorX<Scalar> b = P.constraint_vector();
  for (Index j = 0; j < P.num_constraint_terms(); ++j) {
    const Index k = con.linear_factor(j);
    if (k < 0) b -= P.constraint_matrix().col(j);
    else A.col(k) += P.constraint_matrix().col(j);
  }
  return {std::move(A), std::move(b)};
}

/// Gauss-Newton projection of `alpha` onto the polynomial constraint manifold.
template <typename Scalar>
void project_polynomial(const BasicConstrainedPolyZonotope<Scalar>& P, VectorX<Scalar>& alpha, int iterations) {
  const auto& R = P.constraint_exponents();
  const auto& A = P.constraint_matrix();
  const Index p = P.num_factors(), q = P.num_constraint_terms();
  const MonomialTable table(R);
  VectorX<Scalar> mono;
  for (int it = 0; it < iterations; ++it) {
    table.evaluate(alpha, mono);
    const VectorX<Scalar> r = A * mono - P.constraint_vector();
    if (r.cwiseAbs().maxCoeff() < Scalar(1e-13)) return;
    MatrixX<Scalar> dmono = MatrixX<Scalar>::Zero(q, p);
    for (Index j = 0; j < q; ++j)
      for (Index k = 0; k < p; ++k) {
        if (R(k, j) == 0) continue;
        Scalar v = Scalar(R(k, j)) * std::pow(alpha(k), R(k, j) - 1);
        for (Index l = 0; l < p; ++l)
          if (l != k && R(l, j) != 0) v *= std::pow(alpha(l), R(l, j));
        dmono(j, k) = v;
      }
    const MatrixX<Scalar> J = A * dmono;
    alpha -= Eigen::CompleteOrthogonalDecomposition<MatrixX<Scalar>>(J).solve(r);
  }
}

}  // namespace detail

/// Feasible factor values for P, one column per sample, rows aligned with P.ids().
///
/// Degree-1 constraints (the only kind the reachability pipeline produces) are
/// sampled exactly by hit-and-run on the feasible polytope; factors that do not
/// appear in any constraint are drawn independently. Higher-degree constraints
/// fall back to rejection of projected random draws.
template <typename Scalar>
MatrixX<Scalar> sample_factors(const BasicConstrainedPolyZonotope<Scalar>& P, std::size_t count, Rng& rng,
                               const SampleOptions& opts = {}) {
  const Index p = P.num_factors();
  const auto n = static_cast<Index>(count);
  MatrixX<Scalar> out(p, n);
  if (count == 0) return out;

  const CpzEvaluator<Scalar> eval(P);
  const auto tol = static_cast<Scalar>(opts.residual_tolerance);
  const MonomialTable con(P.constraint_exponents());

  if (!P.has_constraints() || con.is_linear()) {
    std::vector<Index> bound, free;
    MatrixX<Scalar> Abound;
    std::optional<PolytopeChain<Scalar>> chain;
    if (P.has_constraints()) {
      auto [A, b] = detail::linear_constraint_system(P, con);
      for (Index k = 0; k < p; ++k) (A.col(k).cwiseAbs().maxCoeff() > Scalar(0) ? bound : free).push_back(k);
      Abound.resize(A.rows(), static_cast<Index>(bound.size()));
      for (std::size_t j = 0; j < bound.size(); ++j) Abound.col(static_cast<Index>(j)) = A.col(bound[j]);
      chain.emplace(Abound, b, Scalar(0.01) * tol);
    } else {
      for (Index k = 0; k < p; ++k) free.push_back(k);
    }

    std::size_t attempts = 0;
    VectorX<Scalar> alpha(p);
    for (Index s = 0; s < n;) {
      if (++attempts > opts.max_attempts) throw InfeasibleError("sample_factors: attempt budget exhausted");
      if (chain) {
        const VectorX<Scalar> x = chain->next(rng, s == 0 ? 4 * opts.thinning : opts.thinning, opts.boundary_fraction);
        for (std::size_t j = 0; j < bound.size(); ++j) alpha(bound[j]) = x(static_cast<Index>(j));
      }
      const bool vertex = rng.bernoulli(opts.boundary_fraction);
      for (Index k : free) alpha(k) = static_cast<Scalar>(vertex ? rng.sign() : rng.symmetric());
      if (eval.residual(alpha) > tol) continue;
      out.col(s++) = alpha;
    }
    return out;
  }

  std::size_t attempts = 0;
  VectorX<Scalar> alpha(p);
  for (Index s = 0; s < n;) {
    if (++attempts > opts.max_attempts)
      throw InfeasibleError("sample_factors: no feasible factor values found within the attempt budget");
    for (Index k = 0; k < p; ++k) alpha(k) = static_cast<Scalar>(rng.symmetric());
    detail::project_polynomial(P, alpha, 30);
    if (!((alpha.array().abs() <= Scalar(1)).all())) continue;
    if (eval.residual(alpha) > tol) continue;
    out.col(s++) = alpha;
  }
  return out;
}

/// `count` points of P as columns; each comes from a feasible factor vector.
template <typename Scalar>
MatrixX<Scalar> sample_cpz(const BasicConstrainedPolyZonotope<Scalar>& P, std::size_t count, Rng& rng,
                           const SampleOptions& opts = {}) {
  const MatrixX<Scalar> alphas = sample_factors(P, count, rng, opts);
  const CpzEvaluator<Scalar> eval(P);
  MatrixX<Scalar> points(P.dim(), alphas.cols());
  for (Index s = 0; s < alphas.cols(); ++s) points.col(s) = eval(alphas.col(s)).point;
  return points;
}

template <typename Scalar>
MatrixX<Scalar> sample_cpz(const BasicConstrainedPolyZonotope<Scalar>& P, std::size_t count, std::uint64_t seed,
                           const SampleOptions& opts = {}) {
  Rng rng(seed);
  return sample_cpz(P, count, rng, opts);
}

}  // namespace cpzreach
