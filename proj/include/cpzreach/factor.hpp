#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "cpzreach/errors.hpp"

namespace cpzreach {

/// Identifier of a dependent factor. Two sets that carry the same id share the
/// same factor value whenever they are evaluated together.
struct FactorId {
  std::uint64_t value = 0;

  friend constexpr bool operator==(FactorId, FactorId) = default;
  friend constexpr auto operator<=>(FactorId, FactorId) = default;
};

using FactorIds = std::vector<FactorId>;

/// Allocates globally unique factor ids. One context per reachability run.
class FactorContext {
 public:
  explicit FactorContext(std::uint64_t first = 1) : next_(first) {}
  FactorContext(const FactorContext&) = delete;
  FactorContext& operator=(const FactorContext&) = delete;

  /// Returns `count` fresh consecutive ids.
  FactorIds allocate(std::size_t count) {
    const std::uint64_t start = next_.fetch_add(count);
    FactorIds ids(count);
    for (std::size_t i = 0; i < count; ++i) ids[i] = FactorId{start + i};
    return ids;
  }

  std::uint64_t peek_next() const { return next_.load(); }

 private:
  std::atomic<std::uint64_t> next_;
};

inline FactorIds allocate_ids(FactorContext& ctx, std::size_t count) { return ctx.allocate(count); }

}  // namespace cpzreach

template <>
struct std::hash<cpzreach::FactorId> {
  std::size_t operator()(cpzreach::FactorId id) const noexcept { return std::hash<std::uint64_t>{}(id.value); }
};

namespace cpzreach {

/// Values of dependent factors, each restricted to [-1, 1].
template <typename Scalar>
class BasicFactorAssignment {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicFactorAssignment() = default;

  BasicFactorAssignment(std::span<const FactorId> ids, const Vector& values) {
    if (static_cast<Eigen::Index>(ids.size()) != values.size())
      throw DimensionError("FactorAssignment: id count does not match value count");
    for (std::size_t i = 0; i < ids.size(); ++i) set(ids[i], values(static_cast<Eigen::Index>(i)));
  }

  void set(FactorId id, Scalar value) {
    using std::abs;
    if (!(abs(value) <= Scalar(1)))
      throw std::domain_error("FactorAssignment: factor " + std::to_string(id.value) + " outside [-1, 1]");
    values_[id] = value;
  }

  bool contains(FactorId id) const { return values_.count(id) != 0; }
  std::size_t size() const { return values_.size(); }

  std::optional<Scalar> find(FactorId id) const {
    auto it = values_.find(id);
    if (it == values_.end()) return std::nullopt;
    return it->second;
  }

  Scalar at(FactorId id) const {
    auto it = values_.find(id);
    if (it == values_.end()) throw MissingFactorError("no value for factor id " + std::to_string(id.value));
    return it->second;
  }

  /// Values laid out in the order of `ids`.
  Vector aligned(std::span<const FactorId> ids) const {
    Vector out(static_cast<Eigen::Index>(ids.size()));
    for (std::size_t i = 0; i < ids.size(); ++i) out(static_cast<Eigen::Index>(i)) = at(ids[i]);
    return out;
  }

  /// Adds every entry of `other`; entries already present are overwritten.
  void merge(const BasicFactorAssignment& other) {
    for (const auto& [id, v] : other.values_) values_[id] = v;
  }

  const std::unordered_map<FactorId, Scalar>& values() const { return values_; }

 private:
  std::unordered_map<FactorId, Scalar> values_;
};

using FactorAssignment = BasicFactorAssignment<double>;

}  // namespace cpzreach
