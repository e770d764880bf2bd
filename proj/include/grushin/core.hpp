#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include <Eigen/Core>

#include "grushin/errors.hpp"
#include "grushin/quadrature.hpp"

namespace grushin {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

/// A point (x, y) of the Grushin plane. Coordinates are always finite.
template <typename Scalar>
class Point {
public:
  using Coords = Vector2<Scalar>;

  Point(Scalar x, Scalar y) : coords_(x, y) { check(); }
  explicit Point(const Coords& c) : coords_(c) { check(); }

  Scalar x() const { return coords_(0); }
  Scalar y() const { return coords_(1); }
  const Coords& coords() const { return coords_; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.x() == b.x() && a.y() == b.y();
  }

private:
  void check() const {
    if (!std::isfinite(coords_(0)) || !std::isfinite(coords_(1))) {
      throw std::invalid_argument("Grushin point coordinates must be finite");
    }
  }

  Coords coords_;
};

/// The exponent alpha > 0 selecting the plane G_alpha (alpha = 2 is the classical case).
template <typename Scalar>
class MetricParams {
public:
  explicit MetricParams(Scalar alpha = Scalar(2)) : alpha_(alpha) {
    if (!(alpha > 0) || !std::isfinite(alpha)) {
      std::ostringstream os;
      os << "alpha must be a finite positive number, got " << alpha;
      throw PreconditionError(os.str());
    }
  }

  Scalar alpha() const { return alpha_; }
  /// 2 / (2 + alpha): the exponent of |dy| in the quasidistance.
  Scalar vertical_exponent() const { return Scalar(2) / (Scalar(2) + alpha_); }
  /// alpha / 2: the exponent of |x| damping vertical motion.
  Scalar half_alpha() const { return alpha_ / Scalar(2); }

private:
  Scalar alpha_;
};

using GrushinPoint = Point<double>;
using Params = MetricParams<double>;

/// A length that may be infinite (used for inadmissible paths).
template <typename Scalar>
class ExtendedLength {
public:
  static ExtendedLength finite(Scalar v) { return ExtendedLength(v); }
  static ExtendedLength infinite() { return ExtendedLength(); }

  bool is_finite() const { return finite_; }
  Scalar value() const {
    return finite_ ? value_ : std::numeric_limits<Scalar>::infinity();
  }

  ExtendedLength& operator+=(const ExtendedLength& o) {
    finite_ = finite_ && o.finite_;
    value_ = finite_ ? value_ + o.value_ : Scalar(0);
    return *this;
  }
  friend ExtendedLength operator+(ExtendedLength a, const ExtendedLength& b) { return a += b; }

private:
  ExtendedLength() : value_(0), finite_(false) {}
  explicit ExtendedLength(Scalar v) : value_(v), finite_(true) {
    if (!(v >= 0)) throw std::invalid_argument("finite length must be nonnegative");
  }

  Scalar value_;
  bool finite_;
};

/// Ordered vertex list of a polygonal curve; vertex k is column k.
template <typename Scalar>
class PolyPath {
public:
  using Vertices = Eigen::Matrix<Scalar, 2, Eigen::Dynamic>;

  explicit PolyPath(Vertices vertices) : vertices_(std::move(vertices)) { check(); }

  PolyPath(std::initializer_list<Point<Scalar>> pts) : vertices_(2, Eigen::Index(pts.size())) {
    Eigen::Index k = 0;
    for (const auto& p : pts) vertices_.col(k++) = p.coords();
    check();
  }

  /// Builds a path from points, dropping consecutive duplicates.
  static PolyPath from_points(const std::vector<Point<Scalar>>& pts) {
    std::vector<Vector2<Scalar>> kept;
    for (const auto& p : pts) {
      if (kept.empty() || kept.back() != p.coords()) kept.push_back(p.coords());
    }
    Vertices v(2, Eigen::Index(kept.size()));
    for (std::size_t k = 0; k < kept.size(); ++k) v.col(Eigen::Index(k)) = kept[k];
    return PolyPath(std::move(v));
  }

  Eigen::Index size() const { return vertices_.cols(); }
  Eigen::Index segment_count() const { return vertices_.cols() - 1; }
  const Vertices& vertices() const { return vertices_; }
  Point<Scalar> vertex(Eigen::Index k) const { return Point<Scalar>(vertices_.col(k)); }

  PolyPath reversed() const { return PolyPath(vertices_.rowwise().reverse()); }

  /// Concatenation; the last vertex of *this must equal the first of `tail`.
  PolyPath concat(const PolyPath& tail) const {
    if (vertices_.col(size() - 1) != tail.vertices_.col(0)) {
      throw std::invalid_argument("concatenated paths must share the junction vertex");
    }
    Vertices v(2, size() + tail.size() - 1);
    v << vertices_, tail.vertices_.rightCols(tail.size() - 1);
    return PolyPath(std::move(v));
  }

  /// Inserts the midpoint of every segment.
  PolyPath refined() const {
    Vertices v(2, 2 * size() - 1);
    for (Eigen::Index k = 0; k + 1 < size(); ++k) {
      v.col(2 * k) = vertices_.col(k);
      v.col(2 * k + 1) = (vertices_.col(k) + vertices_.col(k + 1)) / Scalar(2);
    }
    v.col(2 * size() - 2) = vertices_.col(size() - 1);
    return PolyPath(std::move(v));
  }

private:
  void check() const {
    if (vertices_.cols() < 2) throw std::invalid_argument("a path needs at least two vertices");
    if (!vertices_.allFinite()) throw std::invalid_argument("path vertices must be finite");
    for (Eigen::Index k = 0; k + 1 < vertices_.cols(); ++k) {
      if (vertices_.col(k) == vertices_.col(k + 1)) {
        throw std::invalid_argument("consecutive path vertices must be distinct");
      }
    }
  }

  Vertices vertices_;
};

// ---------------------------------------------------------------------------
// Quasidistance

/// Which operand decided the quasidistance max{|dx|, min{|dy|^(2/(2+a)), |dy|/m^(a/2)}}.
enum class QuasiBranch { Coincident, Horizontal, VerticalPower, VerticalScaled };

template <typename Scalar>
struct QuasiDistance {
  Scalar value;
  QuasiBranch branch;
};

template <typename Scalar>
QuasiDistance<Scalar> quasidistance_detail(const Point<Scalar>& z1, const Point<Scalar>& z2,
                                           const MetricParams<Scalar>& p) {
  const Scalar dx = std::abs(z1.x() - z2.x());
  const Scalar dy = std::abs(z1.y() - z2.y());
  if (dy == 0) {
    return {dx, dx == 0 ? QuasiBranch::Coincident : QuasiBranch::Horizontal};
  }
  const Scalar power = std::pow(dy, p.vertical_exponent());
  const Scalar xmax = std::max(std::abs(z1.x()), std::abs(z2.x()));
  // On the axis the scaled operand is +infinity, so the power operand wins.
  Scalar vertical = power;
  QuasiBranch branch = QuasiBranch::VerticalPower;
  if (xmax > 0) {
    const Scalar scaled = dy / std::pow(xmax, p.half_alpha());
    if (scaled < power) {
      vertical = scaled;
      branch = QuasiBranch::VerticalScaled;
    }
  }
  if (dx >= vertical) return {dx, QuasiBranch::Horizontal};
  return {vertical, branch};
}

/// The Grushin quasidistance on G_alpha.
template <typename Scalar>
Scalar quasidistance(const Point<Scalar>& z1, const Point<Scalar>& z2,
                     const MetricParams<Scalar>& p) {
  return quasidistance_detail(z1, z2, p).value;
}

// ---------------------------------------------------------------------------
// Image-plane norms

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar linf_distance(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).template lpNorm<Eigen::Infinity>();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar euclidean_distance(const Eigen::MatrixBase<DerivedA>& a,
                                             const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).norm();
}

enum class Norm { LInf, Euclidean };

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar norm_distance(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b, Norm norm) {
  return norm == Norm::LInf ? linf_distance(a, b) : euclidean_distance(a, b);
}

// ---------------------------------------------------------------------------
// Path length

namespace detail {

// Length of the straight segment over the x-interval [lo, hi] (lo < hi, same
// sign or touching 0) with slope dy/dx = m:  integral of sqrt(1 + m^2 |x|^-alpha) dx.
//
// For alpha < 2 and a piece starting on the axis, x = w^p with p = 2/(2 - alpha)
// turns the integrand into p * sqrt(w^(2p-2) + m^2), which is smooth.
template <typename Scalar>
Scalar axis_piece_length(Scalar extent, Scalar m, Scalar alpha, Scalar tol) {
  const Scalar p = Scalar(2) / (Scalar(2) - alpha);
  const Scalar wmax = std::pow(extent, Scalar(1) / p);
  auto f = [&](Scalar w) { return p * std::sqrt(std::pow(w, 2 * p - 2) + m * m); };
  return quadrature::integrate<Scalar>(f, Scalar(0), wmax, tol);
}

template <typename Scalar>
Scalar offaxis_piece_length(Scalar lo, Scalar hi, Scalar m, Scalar alpha, Scalar tol) {
  auto f = [&](Scalar x) { return std::sqrt(1 + m * m * std::pow(std::abs(x), -alpha)); };
  return quadrature::integrate<Scalar>(f, lo, hi, tol);
}

}  // namespace detail

/// Grushin length of the straight segment a -> b.
template <typename Scalar>
ExtendedLength<Scalar> segment_length(const Vector2<Scalar>& a, const Vector2<Scalar>& b,
                                      const MetricParams<Scalar>& p,
                                      Scalar tol = Scalar(1e-10)) {
  using L = ExtendedLength<Scalar>;
  const Scalar dx = b(0) - a(0);
  const Scalar dy = b(1) - a(1);
  if (dy == 0) return L::finite(std::abs(dx));
  if (dx == 0) {
    if (a(0) == 0) return L::infinite();
    return L::finite(std::abs(dy) * std::pow(std::abs(a(0)), -p.half_alpha()));
  }

  Scalar lo = std::min(a(0), b(0));
  Scalar hi = std::max(a(0), b(0));
  const Scalar m = dy / dx;
  const bool touches_axis = lo <= 0 && hi >= 0;
  if (!touches_axis) {
    return L::finite(detail::offaxis_piece_length(lo, hi, m, p.alpha(), tol));
  }
  if (p.alpha() >= 2) return L::infinite();

  // Split at the crossing; each piece is measured from the axis outward.
  Scalar total = 0;
  if (lo < 0) total += detail::axis_piece_length(-lo, m, p.alpha(), tol / 2);
  if (hi > 0) total += detail::axis_piece_length(hi, m, p.alpha(), tol / 2);
  return L::finite(total);
}

/// Grushin length of a polygonal path (sum over its segments).
template <typename Scalar>
ExtendedLength<Scalar> path_length(const PolyPath<Scalar>& path, const MetricParams<Scalar>& p,
                                   Scalar tol = Scalar(1e-10)) {
  auto total = ExtendedLength<Scalar>::finite(0);
  const auto& v = path.vertices();
  for (Eigen::Index k = 0; k + 1 < v.cols(); ++k) {
    total += segment_length<Scalar>(v.col(k), v.col(k + 1), p, tol);
    if (!total.is_finite()) break;
  }
  return total;
}

}  // namespace grushin
