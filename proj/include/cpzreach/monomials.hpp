#pragma once

#include <algorithm>
#include <vector>

#include "cpzreach/errors.hpp"
#include "cpzreach/linalg.hpp"

namespace cpzreach {

/// Column-compressed view of an exponent matrix for repeated monomial evaluation.
///
/// Zero exponents are skipped, which realizes the 0^0 = 1 convention.
class MonomialTable {
 public:
  MonomialTable() = default;

  explicit MonomialTable(const ExponentMatrix& E) : num_factors_(E.rows()), num_terms_(E.cols()) {
    start_.reserve(static_cast<std::size_t>(E.cols()) + 1);
    for (Index i = 0; i < E.cols(); ++i) {
      for (Index k = 0; k < E.rows(); ++k) {
        const int e = E(k, i);
        if (e < 0) throw DimensionError("exponent matrices must be nonnegative");
        if (e == 0) continue;
        factor_.push_back(static_cast<int>(k));
        power_.push_back(e);
        max_power_ = std::max(max_power_, e);
      }
      start_.push_back(factor_.size());
    }
  }

  Index num_factors() const { return num_factors_; }
  Index num_terms() const { return num_terms_; }

  /// out(i) = prod_k alpha(k)^E(k, i).
  template <typename Scalar>
  void evaluate(const VectorX<Scalar>& alpha, VectorX<Scalar>& out) const {
    if (alpha.size() != num_factors_) throw DimensionError("MonomialTable: factor count mismatch");
    const int width = max_power_ + 1;
    powers_scratch<Scalar>().resize(static_cast<std::size_t>(num_factors_ * width));
    auto& pw = powers_scratch<Scalar>();
    for (Index k = 0; k < num_factors_; ++k) {
      Scalar acc = Scalar(1);
      pw[static_cast<std::size_t>(k * width)] = acc;
      for (int e = 1; e < width; ++e) {
        acc *= alpha(k);
        pw[static_cast<std::size_t>(k * width + e)] = acc;
      }
    }
    out.resize(num_terms_);
    for (Index i = 0; i < num_terms_; ++i) {
      Scalar m = Scalar(1);
      for (std::size_t j = start_[static_cast<std::size_t>(i)]; j < start_[static_cast<std::size_t>(i) + 1]; ++j)
        m *= pw[static_cast<std::size_t>(factor_[j] * width + power_[j])];
      out(i) = m;
    }
  }

  template <typename Scalar>
  VectorX<Scalar> evaluate(const VectorX<Scalar>& alpha) const {
    VectorX<Scalar> out;
    evaluate(alpha, out);
    return out;
  }

  /// True when every column is a standard basis vector or zero (degree <= 1).
  bool is_linear() const {
    for (std::size_t i = 0; i + 1 < start_.size(); ++i) {
      const std::size_t nnz = start_[i + 1] - start_[i];
      if (nnz > 1) return false;
      if (nnz == 1 && power_[start_[i]] != 1) return false;
    }
    return true;
  }

  /// Factor index of a degree-1 column, or -1 for a constant column.
  Index linear_factor(Index column) const {
    const auto i = static_cast<std::size_t>(column);
    return start_[i + 1] == start_[i] ? -1 : factor_[start_[i]];
  }

 private:
  template <typename Scalar>
  static std::vector<Scalar>& powers_scratch() {
    thread_local std::vector<Scalar> buf;
    return buf;
  }

  Index num_factors_ = 0;
  Index num_terms_ = 0;
  int max_power_ = 0;
  std::vector<std::size_t> start_{0};
  std::vector<int> factor_;
  std::vector<int> power_;
};

}  // namespace cpzreach
