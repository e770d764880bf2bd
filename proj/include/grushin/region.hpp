#pragma once

#include <cmath>
#include <sstream>

#include <Eigen/Core>

#include "grushin/errors.hpp"

namespace grushin {

/// Closed axis-aligned rectangle [xmin, xmax] x [ymin, ymax].
struct Rectangle {
  double xmin = -2.0;
  double ymin = -2.0;
  double xmax = 2.0;
  double ymax = 2.0;

  static Rectangle checked(double xmin, double ymin, double xmax, double ymax) {
    Rectangle r{xmin, ymin, xmax, ymax};
    r.validate();
    return r;
  }

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& p) const {
    return p(0) >= xmin && p(0) <= xmax && p(1) >= ymin && p(1) <= ymax;
  }

  void validate() const {
    const bool finite = std::isfinite(xmin) && std::isfinite(ymin) && std::isfinite(xmax) &&
                        std::isfinite(ymax);
    if (!finite || !(xmin < xmax) || !(ymin < ymax)) {
      std::ostringstream os;
      os << "empty or non-finite region [" << xmin << ", " << xmax << "] x [" << ymin << ", "
         << ymax << "]";
      throw PreconditionError(os.str());
    }
  }

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

}  // namespace grushin
