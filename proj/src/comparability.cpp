#include "grushin/comparability.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "grushin/grid_oracle.hpp"
#include "grushin/random.hpp"
#include "grushin/staircase.hpp"

namespace grushin {

double ComparabilityReport::constant() const { return std::max(ratio_max, 1.0 / ratio_min); }

ComparabilityReport comparability_scan(const Rectangle& region, const Params& p,
                                       std::int64_t n_samples, std::uint64_t seed,
                                       int resolution) {
  region.validate();
  if (n_samples < 1) throw PreconditionError("comparability scan needs at least one sample");
  const GridOracle grid(p, region, resolution);

  std::vector<ComparabilitySample> samples;
  samples.reserve(static_cast<std::size_t>(n_samples));
  for (std::int64_t k = 0; k < n_samples; ++k) {
    RandomStream rng(seed, static_cast<std::uint64_t>(k));
    for (;;) {
      const GrushinPoint z1(rng.uniform(region.xmin, region.xmax),
                            rng.uniform(region.ymin, region.ymax));
      const GrushinPoint z2(rng.uniform(region.xmin, region.xmax),
                            rng.uniform(region.ymin, region.ymax));
      const double d = quasidistance(z1, z2, p);
      if (d < kDegenerateDistance) continue;
      samples.push_back({k, z1, z2, d, staircase_distance(z1, z2, p).length, 0.0, 0.0});
      break;
    }
  }

  // One Dijkstra sweep per source column answers every pair starting there.
  std::map<int, std::vector<std::size_t>> by_column;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    by_column[grid.nearest_node(samples[k].z1).column].push_back(k);
  }
  for (const auto& [column, members] : by_column) {
    std::vector<GridOracle::Node> targets;
    targets.reserve(members.size());
    for (auto k : members) {
      const auto a = grid.nearest_node(samples[k].z1);
      const auto b = grid.nearest_node(samples[k].z2);
      // Shift so the source sits at row 0; only the row difference matters.
      targets.push_back({b.column, std::abs(b.row - a.row)});
    }
    const auto dist = grid.node_distances({column, 0}, targets);
    for (std::size_t m = 0; m < members.size(); ++m) samples[members[m]].grid = dist[m];
  }

  ComparabilityReport report{std::numeric_limits<double>::infinity(), 0.0, n_samples, region,
                             seed, resolution, {}};
  for (auto& s : samples) {
    // Two points snapped to the same node carry no grid information.
    const double estimate = s.grid > 0 ? std::min(s.staircase, s.grid) : s.staircase;
    s.ratio = s.quasidistance / estimate;
    report.ratio_min = std::min(report.ratio_min, s.ratio);
    report.ratio_max = std::max(report.ratio_max, s.ratio);
  }
  report.samples = std::move(samples);
  return report;
}

}  // namespace grushin
