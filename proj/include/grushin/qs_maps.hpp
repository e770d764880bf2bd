#pragma once

#include <cmath>

#include "grushin/core.hpp"

namespace grushin {

/// Flattening map F_alpha(x, y) = (x |x|^(alpha/2), y).
template <typename Scalar>
Vector2<Scalar> forward_map(const Point<Scalar>& z, const MetricParams<Scalar>& p) {
  return {z.x() * std::pow(std::abs(z.x()), p.half_alpha()), z.y()};
}

/// Inverse of forward_map: (u, v) -> (sign(u) |u|^(2/(2+alpha)), v).
template <typename Derived>
Point<typename Derived::Scalar> inverse_map(const Eigen::MatrixBase<Derived>& w,
                                            const MetricParams<typename Derived::Scalar>& p) {
  using Scalar = typename Derived::Scalar;
  const Scalar u = w(0);
  const Scalar mag = std::pow(std::abs(u), p.vertical_exponent());
  return Point<Scalar>(u < 0 ? -mag : mag, w(1));
}

enum class CaseLabel { Case1, Case2, Case3_1, Case3_2, Case3_3 };

/// Scale function f_z of a base point: r^2 or |x| r.
template <typename Scalar>
struct ScaleFunction {
  enum class Form { Quadratic, LinearInX };

  Form form = Form::Quadratic;
  Scalar coefficient = 0;

  static ScaleFunction quadratic() { return {Form::Quadratic, Scalar(0)}; }
  static ScaleFunction linear(Scalar coeff) { return {Form::LinearInX, coeff}; }

  Scalar operator()(Scalar r) const { return form == Form::Quadratic ? r * r : coefficient * r; }
};

template <typename Scalar>
struct CaseClassification {
  CaseLabel label;
  ScaleFunction<Scalar> scale;
  /// Quasidistance of the normalized pair.
  Scalar r;
  /// The pair after translating z to y = 0 and reflecting so z has x >= 0.
  Point<Scalar> z;
  Point<Scalar> zp;
};

/// Classifies the pair (z, z') into the case analysis of the flattening map.
///
/// The pair is normalized first (z translated to height 0, reflected into
/// x >= 0). Boundaries resolve as: r <= 3x is Case 2, and within r > 3x,
/// |x'| <= x is 3.1, |x'| >= r/3 is 3.3, otherwise 3.2.
template <typename Scalar>
CaseClassification<Scalar> classify_case(const Point<Scalar>& z, const Point<Scalar>& zp,
                                         const MetricParams<Scalar>& p) {
  const Scalar flip = z.x() < 0 ? Scalar(-1) : Scalar(1);
  const Point<Scalar> zn(flip * z.x(), Scalar(0));
  const Point<Scalar> zpn(flip * zp.x(), zp.y() - z.y());
  const Scalar x = zn.x();
  const Scalar xp = std::abs(zpn.x());
  const Scalar r = quasidistance(zn, zpn, p);

  using SF = ScaleFunction<Scalar>;
  if (x == 0) return {CaseLabel::Case1, SF::quadratic(), r, zn, zpn};
  if (r <= 3 * x) return {CaseLabel::Case2, SF::linear(x), r, zn, zpn};
  if (xp <= x) return {CaseLabel::Case3_1, SF::quadratic(), r, zn, zpn};
  if (xp >= r / 3) return {CaseLabel::Case3_3, SF::quadratic(), r, zn, zpn};
  return {CaseLabel::Case3_2, SF::quadratic(), r, zn, zpn};
}

/// Acceptance window [lower, upper] for image_distance / f_z(d).
template <typename Scalar>
struct SandwichWindow {
  Scalar lower;
  Scalar upper;

  /// Symmetric window [1/C, C].
  static SandwichWindow symmetric(Scalar c) { return {Scalar(1) / c, c}; }
  bool contains(Scalar ratio) const { return ratio >= lower && ratio <= upper; }
};

template <typename Scalar>
struct SandwichCheck {
  Scalar lower_ratio;
  Scalar upper_ratio;
  bool passed;
  Norm norm_used;
  CaseLabel label;
  Scalar image_distance;
  Scalar scale_value;
};

/// Compares |F(z) - F(z')| against f_z(d(z, z')) in the requested image norm.
///
/// For one pair both ratios coincide; they separate once checks are merged
/// over a sample (see merge()).
template <typename Scalar>
SandwichCheck<Scalar> sandwich_check(const Point<Scalar>& z, const Point<Scalar>& zp,
                                     const MetricParams<Scalar>& p, SandwichWindow<Scalar> window,
                                     Norm norm) {
  if (z == zp) throw PreconditionError("sandwich check needs two distinct points");
  const auto cls = classify_case(z, zp, p);
  const Scalar image = norm_distance(forward_map(z, p), forward_map(zp, p), norm);
  const Scalar scale = cls.scale(cls.r);
  const Scalar ratio = image / scale;
  return {ratio, ratio, window.contains(ratio), norm, cls.label, image, scale};
}

template <typename Scalar>
SandwichCheck<Scalar> sandwich_check(const Point<Scalar>& z, const Point<Scalar>& zp,
                                     const MetricParams<Scalar>& p, Scalar c_s, Norm norm) {
  return sandwich_check(z, zp, p, SandwichWindow<Scalar>::symmetric(c_s), norm);
}

/// Running worst case over many sandwich checks.
template <typename Scalar>
struct SandwichSummary {
  Scalar lower_ratio = std::numeric_limits<Scalar>::infinity();
  Scalar upper_ratio = 0;
  long long checked = 0;
  long long violations = 0;

  void merge(const SandwichCheck<Scalar>& c) {
    lower_ratio = std::min(lower_ratio, c.lower_ratio);
    upper_ratio = std::max(upper_ratio, c.upper_ratio);
    ++checked;
    if (!c.passed) ++violations;
  }
};

}  // namespace grushin
