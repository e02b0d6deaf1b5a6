#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cpzreach/cpz.hpp"

namespace cpzreach::harness {

struct WidthCell {
  int k = 0;
  int coordinate = 0;  ///< 1-based
  double enclosure_a = 0;
  double enclosure_b = 0;
  double support_a = 0;  ///< max - min of the sampled points
  double support_b = 0;
};

struct WidthTable {
  std::vector<WidthCell> cells;
  /// Cells with support_a <= support_b.
  int a_not_wider = 0;
  double fraction_a_not_wider() const;
};

/// Per-step, per-coordinate widths of two reach-set sequences, for k = first_step .. N.
/// Set k of either sequence is sampled with the stream (seed, k), so equal sets give equal samples.
WidthTable compare_widths(const std::vector<ConstrainedPolyZonotope>& a, const std::vector<ConstrainedPolyZonotope>& b,
                          int samples, std::uint64_t seed, int first_step = 1);

void write_width_csv(std::ostream& out, const WidthTable& table);

nlohmann::json summary_json(const WidthTable& table);

}  // namespace cpzreach::harness
