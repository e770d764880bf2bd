#pragma once

#include <cstdint>
#include <vector>

#include "grushin/core.hpp"
#include "grushin/region.hpp"

namespace grushin {

struct ComparabilitySample {
  std::int64_t id;
  GrushinPoint z1;
  GrushinPoint z2;
  double quasidistance;
  double staircase;
  double grid;
  /// quasidistance / min(staircase, grid)
  double ratio;
};

/// Empirical comparability between the quasidistance and the CC distance estimate.
struct ComparabilityReport {
  double ratio_min;
  double ratio_max;
  std::int64_t sample_count;
  Rectangle region;
  std::uint64_t seed;
  int resolution;
  std::vector<ComparabilitySample> samples;

  /// C = max{ratio_max, 1 / ratio_min}.
  double constant() const;
};

inline constexpr int kDefaultScanResolution = 512;
inline constexpr double kDegenerateDistance = 1e-12;

/// Samples point pairs uniformly in `region` (pair k drawn from stream (seed, k),
/// coincident pairs redrawn) and compares the quasidistance with the smaller of
/// the staircase and grid estimates of d_CC.
ComparabilityReport comparability_scan(const Rectangle& region, const Params& p,
                                       std::int64_t n_samples, std::uint64_t seed,
                                       int resolution = kDefaultScanResolution);

}  // namespace grushin
