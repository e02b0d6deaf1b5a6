#include "cpzreach/harness/compare.hpp"

#include <algorithm>

#include "cpzreach/errors.hpp"
#include "cpzreach/harness/output.hpp"
#include "cpzreach/sampling.hpp"

namespace cpzreach::harness {

namespace {

constexpr std::uint64_t kCompareStream = 1000;

Eigen::VectorXd support_width(const ConstrainedPolyZonotope& P, int samples, std::uint64_t seed, int k) {
  Rng rng(seed, kCompareStream + static_cast<std::uint64_t>(k));
  const Eigen::MatrixXd pts = sample_cpz(P, static_cast<std::size_t>(samples), rng);
  return pts.rowwise().maxCoeff() - pts.rowwise().minCoeff();
}

}  // namespace

double WidthTable::fraction_a_not_wider() const {
  return cells.empty() ? 0.0 : static_cast<double>(a_not_wider) / static_cast<double>(cells.size());
}

WidthTable compare_widths(const std::vector<ConstrainedPolyZonotope>& a, const std::vector<ConstrainedPolyZonotope>& b,
                          int samples, std::uint64_t seed, int first_step) {
  if (a.size() != b.size()) throw DimensionError("compare_widths: sequences have different lengths");
  if (samples < 1) throw DimensionError("compare_widths: need at least one sample per set");
  WidthTable table;
  for (std::size_t k = static_cast<std::size_t>(std::max(first_step, 0)); k < a.size(); ++k) {
    if (a[k].dim() != b[k].dim()) throw DimensionError("compare_widths: dimension mismatch at step " + std::to_string(k));
    const auto ea = interval_enclosure(a[k]).width(), eb = interval_enclosure(b[k]).width();
    const Eigen::VectorXd sa = support_width(a[k], samples, seed, static_cast<int>(k));
    const Eigen::VectorXd sb = support_width(b[k], samples, seed, static_cast<int>(k));
    for (Eigen::Index i = 0; i < a[k].dim(); ++i) {
      table.cells.push_back({static_cast<int>(k), static_cast<int>(i) + 1, ea(i), eb(i), sa(i), sb(i)});
      if (sa(i) <= sb(i)) ++table.a_not_wider;
    }
  }
  return table;
}

void write_width_csv(std::ostream& out, const WidthTable& table) {
  out << "k,coordinate,enclosure_a,enclosure_b,support_a,support_b\n";
  for (const auto& c : table.cells)
    out << c.k << ',' << c.coordinate << ',' << format_double(c.enclosure_a) << ',' << format_double(c.enclosure_b)
        << ',' << format_double(c.support_a) << ',' << format_double(c.support_b) << '\n';
}

nlohmann::json summary_json(const WidthTable& table) {
  return {{"cells", table.cells.size()},
          {"a_not_wider", table.a_not_wider},
          {"fraction_a_not_wider", table.fraction_a_not_wider()}};
}

}  // namespace cpzreach::harness
