#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cpzreach/cpz.hpp"

namespace cpzreach::harness {

inline constexpr const char* kProjectionHeader = "set_label,k,dim_i,dim_j,xi,xj";

struct ProjectionRow {
  std::string label;
  int k = 0;
  int dim_i = 0;  ///< 1-based
  int dim_j = 0;
  double xi = 0;
  double xj = 0;
};

/// 17 significant digits, enough to read the same double back.
std::string format_double(double v);

/// `samples` feasible points of P projected onto every pair. Throws InfeasibleError if a
/// point's constraint residual exceeds `tolerance`.
std::vector<ProjectionRow> project_samples(const std::string& label, int k, const ConstrainedPolyZonotope& P,
                                           const std::vector<std::pair<int, int>>& pairs, int samples,
                                           std::uint64_t seed, double tolerance = 1e-8);

void write_projection_csv(std::ostream& out, const std::vector<ProjectionRow>& rows);

/// Parses a projection CSV back; throws ConfigError on a malformed header or row.
std::vector<ProjectionRow> read_projection_csv(std::istream& in);

}  // namespace cpzreach::harness
