#pragma once

#include <cstdint>

#include "grushin/core.hpp"

namespace grushin {

struct SemmesEstimate {
  /// delta = (mass of the ball)^(1/2)
  double delta;
  /// Weighted area of B(z1, |z1 - z2|) under |x|^beta dx dy.
  double mass;
  double mass_std_error;
  /// Standard error of delta (first-order propagation).
  double delta_std_error;
  double relative_std_error;
};

inline constexpr int kDefaultSemmesStrata = 64;

/// Measure quasidistance of the weight |x|^beta: the square root of the weighted
/// area of the Euclidean ball B(z1, |z1 - z2|).
///
/// Stratified Monte Carlo: the x-range of the ball is cut into strata (split at
/// the axis); inside a stratum x is drawn with density proportional to |x|^beta
/// and y uniformly over the ball's height, so every estimator term is bounded.
/// Stratum s uses the random stream (seed, s).
SemmesEstimate semmes_quasidistance(const Vector2<double>& z1, const Vector2<double>& z2,
                                    double beta, std::int64_t mc_samples, std::uint64_t seed,
                                    int strata = kDefaultSemmesStrata);

}  // namespace grushin
