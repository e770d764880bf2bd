#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "grushin/core.hpp"

namespace grushin {

enum class WeightRegime { TrivialIdentity, SemmesRange, PaperRange, Open, Rejected };

const char* to_string(WeightRegime r);

/// The weight |x|^beta and, for -2 < beta < 0, the Grushin exponent alpha whose
/// flattening map inverse has Jacobian comparable to it.
template <typename Scalar>
struct WeightExponent {
  Scalar beta;
  std::optional<Scalar> derived_alpha;
  WeightRegime regime;
};

/// alpha = -2 beta / (2 + beta) on (-2, 0); classification is total.
template <typename Scalar>
WeightExponent<Scalar> alpha_for_beta(Scalar beta) {
  if (!(beta <= 0)) return {beta, std::nullopt, WeightRegime::Rejected};  // includes NaN
  if (beta == 0) return {beta, std::nullopt, WeightRegime::TrivialIdentity};
  if (beta <= -2) return {beta, std::nullopt, WeightRegime::Open};
  const Scalar alpha = -2 * beta / (2 + beta);
  return {beta, alpha, beta > -1 ? WeightRegime::SemmesRange : WeightRegime::PaperRange};
}

/// The inverse exponent: -2 alpha / (2 + alpha).
template <typename Scalar>
Scalar beta_for_alpha(Scalar alpha) {
  return -2 * alpha / (2 + alpha);
}

/// Volume distortion of the inverse flattening map at image abscissa u.
///
/// euclidean_factor is d/du of |u|^(2/(2+alpha)); grushin_density is the
/// Riemannian volume density |x|^(-alpha/2) at the preimage.
template <typename Scalar>
struct DensityProbe {
  Vector2<Scalar> point;
  Scalar euclidean_factor;
  Scalar grushin_density;
  Scalar total;
};

template <typename Scalar>
DensityProbe<Scalar> jacobian_density(Scalar u, Scalar beta, Scalar v = Scalar(0)) {
  const auto w = alpha_for_beta(beta);
  if (!w.derived_alpha) {
    throw PreconditionError("jacobian density needs -2 < beta < 0, got " + std::to_string(beta));
  }
  if (u == 0 || !std::isfinite(u)) {
    throw PreconditionError("jacobian density is unbounded on the axis u = 0");
  }
  const Scalar alpha = *w.derived_alpha;
  const Scalar au = std::abs(u);
  const Scalar euclidean = Scalar(2) / (2 + alpha) * std::pow(au, -alpha / (2 + alpha));
  const Scalar x = std::pow(au, Scalar(2) / (2 + alpha));
  const Scalar grushin = std::pow(x, -alpha / 2);
  return {Vector2<Scalar>(u, v), euclidean, grushin, euclidean * grushin};
}

/// Local integrability of |x|^(-t/2) on horizontal lines through the axis.
struct AclReport {
  double t;
  bool integrable;
  /// Integral of x^(-t/2) over (0, 1] when finite.
  std::optional<double> integral;
  /// Quadrature value of the same integral over [delta_k, 1] for shrinking delta_k.
  std::vector<double> deltas;
  std::vector<double> partial_integrals;
  /// When divergent: partial integrals strictly increase and the last one
  /// exceeds every bound tried so far.
  bool divergence_certified = false;
};

AclReport acl_integrability(double t);

}  // namespace grushin
