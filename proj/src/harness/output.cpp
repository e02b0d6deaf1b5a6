#include "cpzreach/harness/output.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

#include "cpzreach/errors.hpp"
#include "cpzreach/sampling.hpp"

namespace cpzreach::harness {

namespace {

constexpr std::uint64_t kProjectionStream = 100;

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<ProjectionRow> project_samples(const std::string& label, int k, const ConstrainedPolyZonotope& P,
                                           const std::vector<std::pair<int, int>>& pairs, int samples,
                                           std::uint64_t seed, double tolerance) {
  for (auto [i, j] : pairs)
    if (!(1 <= i && i < j && j <= P.dim())) throw DimensionError("project_samples: bad coordinate pair");
  Rng rng(seed, kProjectionStream + static_cast<std::uint64_t>(k));
  SampleOptions opts;
  opts.residual_tolerance = tolerance;
  const Eigen::MatrixXd alphas = sample_factors(P, static_cast<std::size_t>(std::max(samples, 0)), rng, opts);
  const CpzEvaluator<double> eval(P);
  std::vector<ProjectionRow> rows;
  rows.reserve(static_cast<std::size_t>(alphas.cols()) * pairs.size());
  for (Eigen::Index s = 0; s < alphas.cols(); ++s) {
    const auto e = eval(alphas.col(s));
    if (!(e.constraint_residual <= tolerance))
      throw InfeasibleError("project_samples: sample of " + label + " violates its constraints by " +
                            std::to_string(e.constraint_residual));
    for (auto [i, j] : pairs) rows.push_back({label, k, i, j, e.point(i - 1), e.point(j - 1)});
  }
  return rows;
}

void write_projection_csv(std::ostream& out, const std::vector<ProjectionRow>& rows) {
  out << kProjectionHeader << '\n';
  for (const auto& r : rows)
    out << r.label << ',' << r.k << ',' << r.dim_i << ',' << r.dim_j << ',' << format_double(r.xi) << ','
        << format_double(r.xj) << '\n';
}

std::vector<ProjectionRow> read_projection_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kProjectionHeader)
    throw ConfigError("projection CSV must start with the header " + std::string(kProjectionHeader));
  std::vector<ProjectionRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field[6];
    for (int f = 0; f < 6; ++f)
      if (!std::getline(ss, field[f], ',')) throw ConfigError("projection CSV: short row '" + line + "'");
    try {
      rows.push_back({field[0], std::stoi(field[1]), std::stoi(field[2]), std::stoi(field[3]), std::stod(field[4]),
                      std::stod(field[5])});
    } catch (const std::exception&) {
      throw ConfigError("projection CSV: unreadable row '" + line + "'");
    }
  }
  return rows;
}

}  // namespace cpzreach::harness
