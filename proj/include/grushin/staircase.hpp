#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "grushin/core.hpp"

namespace grushin {

enum class StaircaseBranch { InteriorOptimum, EndpointX1, EndpointX2, PureVertical };

/// Best horizontal-vertical-horizontal path z1 -> (s, y1) -> (s, y2) -> z2.
template <typename Scalar>
struct StaircaseSolution {
  Scalar pivot_abscissa;
  Scalar length;
  StaircaseBranch branch;
};

/// K = (alpha / 4)^(2 / (2 + alpha)): the optimal pivot for a unit vertical gap.
template <typename Scalar>
Scalar staircase_constant(const MetricParams<Scalar>& p) {
  return std::pow(p.alpha() / Scalar(4), p.vertical_exponent());
}

/// Staircase length as a function of the pivot abscissa s (infinite at s = 0).
template <typename Scalar>
Scalar staircase_objective(const Point<Scalar>& z1, const Point<Scalar>& z2, Scalar s,
                           const MetricParams<Scalar>& p) {
  const Scalar dy = std::abs(z1.y() - z2.y());
  const Scalar horizontal = std::abs(z1.x() - s) + std::abs(z2.x() - s);
  if (dy == 0) return horizontal;
  if (s == 0) return std::numeric_limits<Scalar>::infinity();
  return horizontal + dy * std::pow(std::abs(s), -p.half_alpha());
}

/// Minimizes the staircase objective over s.
///
/// On each half-line s > 0 and s < 0 the objective is convex, so the minimizer is
/// either the stationary point +-K|dy|^(2/(2+alpha)) or the endpoint abscissa
/// nearest to it on that side. Enumerating those four candidates is exact.
template <typename Scalar>
StaircaseSolution<Scalar> staircase_distance(const Point<Scalar>& z1, const Point<Scalar>& z2,
                                             const MetricParams<Scalar>& p) {
  const Scalar dy = std::abs(z1.y() - z2.y());
  if (dy == 0) {
    return {z1.x(), std::abs(z1.x() - z2.x()), StaircaseBranch::EndpointX1};
  }

  const Scalar stationary = staircase_constant(p) * std::pow(dy, p.vertical_exponent());
  const bool same_column = z1.x() == z2.x();
  struct Candidate {
    Scalar s;
    StaircaseBranch branch;
  };
  const std::array<Candidate, 4> candidates{{
      {stationary, StaircaseBranch::InteriorOptimum},
      {-stationary, StaircaseBranch::InteriorOptimum},
      {z1.x(), same_column ? StaircaseBranch::PureVertical : StaircaseBranch::EndpointX1},
      {z2.x(), same_column ? StaircaseBranch::PureVertical : StaircaseBranch::EndpointX2},
  }};

  std::optional<StaircaseSolution<Scalar>> best;
  for (const auto& c : candidates) {
    if (c.s == 0) continue;
    const Scalar len = staircase_objective(z1, z2, c.s, p);
    // Strict comparison: ties keep the earlier (interior) candidate.
    if (!best || len < best->length) best = StaircaseSolution<Scalar>{c.s, len, c.branch};
  }
  return *best;
}

/// The polygonal path realizing a staircase solution.
template <typename Scalar>
PolyPath<Scalar> staircase_path(const Point<Scalar>& z1, const Point<Scalar>& z2,
                                const StaircaseSolution<Scalar>& sol) {
  const Scalar s = sol.pivot_abscissa;
  return PolyPath<Scalar>::from_points({z1, Point<Scalar>(s, z1.y()), Point<Scalar>(s, z2.y()), z2});
}

}  // namespace grushin
