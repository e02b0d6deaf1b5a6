#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "cpzreach/errors.hpp"
#include "cpzreach/linalg.hpp"

namespace cpzreach {

template <typename Scalar>
struct BoxLsqOptions {
  Scalar tolerance = Scalar(1e-10);
  int max_iterations = 10000;
};

namespace detail {

template <typename Scalar>
bool bounces_back(const std::vector<Index>& free_idx, const VectorX<Scalar>& z, Index j, const VectorX<Scalar>& lo,
                  const VectorX<Scalar>& hi) {
  for (std::size_t k = 0; k < free_idx.size(); ++k)
    if (free_idx[k] == j) return z(static_cast<Index>(k)) < lo(j) || z(static_cast<Index>(k)) > hi(j);
  return false;
}

}  // namespace detail

template <typename Scalar>
struct BoxLsqResult {
  VectorX<Scalar> x;
  Scalar residual_norm = 0;  ///< Euclidean norm of A x - d.
  int iterations = 0;
  bool converged = false;
};

/// Bounded-variable least squares: minimize |A x - d|_2 subject to lo <= x <= hi.
///
/// Active-set method in the style of Stark and Parker. Each pass solves the
/// unconstrained problem over the free variables (minimum-norm solution, so
/// underdetermined systems are fine), walks toward it until a bound blocks, and
/// releases the bound variable with the largest KKT violation once the free
/// problem is solved. Requires lo <= 0 <= hi.
template <typename Scalar>
BoxLsqResult<Scalar> solve_box_lsq(const MatrixX<Scalar>& A, const VectorX<Scalar>& d, const VectorX<Scalar>& lo,
                                   const VectorX<Scalar>& hi, const BoxLsqOptions<Scalar>& opts = {}) {
  using std::abs;
  const Index n = A.cols();
  if (A.rows() != d.size() || lo.size() != n || hi.size() != n) throw DimensionError("solve_box_lsq: shape mismatch");

  enum class Bound : unsigned char { Free, Lower, Upper };
  BoxLsqResult<Scalar> result;
  result.x = VectorX<Scalar>::Zero(n).cwiseMax(lo).cwiseMin(hi);
  VectorX<Scalar>& x = result.x;

  std::vector<Bound> state(static_cast<std::size_t>(n), Bound::Free);
  for (Index i = 0; i < n; ++i) {
    if (x(i) <= lo(i)) state[i] = Bound::Lower;
    else if (x(i) >= hi(i)) state[i] = Bound::Upper;
  }

  if (A.rows() == 0 || n == 0) {
    result.residual_norm = (A * x - d).norm();
    result.converged = true;
    return result;
  }

  const Scalar scale = Scalar(1) + A.cwiseAbs().maxCoeff() * std::max<Scalar>(Scalar(1), d.cwiseAbs().maxCoeff());
  const Scalar kkt_tol = opts.tolerance * scale;
  std::vector<bool> blocked(static_cast<std::size_t>(n), false);
  Index just_freed = -1;

  std::vector<Index> free_idx;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    result.iterations = iter + 1;
    free_idx.clear();
    for (Index i = 0; i < n; ++i)
      if (state[i] == Bound::Free) free_idx.push_back(i);

    if (!free_idx.empty()) {
      const Index nf = static_cast<Index>(free_idx.size());
      MatrixX<Scalar> Af(A.rows(), nf);
      VectorX<Scalar> xf(nf);
      VectorX<Scalar> rhs = d;
      for (Index j = 0; j < n; ++j)
        if (state[j] != Bound::Free) rhs.noalias() -= A.col(j) * x(j);
      for (Index k = 0; k < nf; ++k) {
        Af.col(k) = A.col(free_idx[k]);
        xf(k) = x(free_idx[k]);
      }
      const VectorX<Scalar> z = Eigen::CompleteOrthogonalDecomposition<MatrixX<Scalar>>(Af).solve(rhs);

      Scalar step = Scalar(1);
      for (Index k = 0; k < nf; ++k) {
        const Index i = free_idx[k];
        const Scalar delta = z(k) - xf(k);
        if (z(k) < lo(i) && delta < 0) step = std::min(step, (lo(i) - xf(k)) / delta);
        else if (z(k) > hi(i) && delta > 0) step = std::min(step, (hi(i) - xf(k)) / delta);
      }
      step = std::max(step, Scalar(0));

      if (step >= Scalar(1)) {
        for (Index k = 0; k < nf; ++k) x(free_idx[k]) = z(k);
        std::fill(blocked.begin(), blocked.end(), false);
        just_freed = -1;
      } else if (just_freed >= 0 && step <= Scalar(0) && detail::bounces_back(free_idx, z, just_freed, lo, hi)) {
        // The freshly released variable wants to go straight back through its bound:
        // re-bind it and try the next candidate instead of cycling.
        state[just_freed] = x(just_freed) <= lo(just_freed) ? Bound::Lower : Bound::Upper;
        blocked[just_freed] = true;
        just_freed = -1;
      } else {
        for (Index k = 0; k < nf; ++k) {
          const Index i = free_idx[k];
          Scalar v = xf(k) + step * (z(k) - xf(k));
          const Scalar eps = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * (Scalar(1) + abs(v));
          if (v <= lo(i) + eps && z(k) < lo(i)) {
            v = lo(i);
            state[i] = Bound::Lower;
          } else if (v >= hi(i) - eps && z(k) > hi(i)) {
            v = hi(i);
            state[i] = Bound::Upper;
          }
          x(i) = std::clamp(v, lo(i), hi(i));
        }
        if (step > Scalar(0)) std::fill(blocked.begin(), blocked.end(), false);
        just_freed = -1;
        continue;
      }
    }

    {
      const VectorX<Scalar> w = A.transpose() * (d - A * x);
      Index best = -1;
      Scalar best_val = kkt_tol;
      for (Index j = 0; j < n; ++j) {
        if (blocked[j] || lo(j) == hi(j)) continue;
        if (state[j] == Bound::Lower && w(j) > best_val) {
          best = j;
          best_val = w(j);
        } else if (state[j] == Bound::Upper && -w(j) > best_val) {
          best = j;
          best_val = -w(j);
        }
      }
      if (best < 0) {
        result.converged = true;
        break;
      }
      state[best] = Bound::Free;
      just_freed = best;
    }
  }

  result.residual_norm = (A * x - d).norm();
  return result;
}

}  // namespace cpzreach
