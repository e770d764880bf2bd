#include "grushin/semmes.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "grushin/random.hpp"

namespace grushin {
namespace {

// |x|^beta restricted to [lo, hi] with 0 <= lo < hi: mass and inverse CDF.
struct PowerSlab {
  double lo;
  double hi;
  double beta;

  double primitive(double x) const { return std::pow(x, beta + 1) / (beta + 1); }
  double mass() const { return primitive(hi) - primitive(lo); }
  double sample(double u) const {
    const double a = std::pow(lo, beta + 1);
    const double b = std::pow(hi, beta + 1);
    return std::pow(a + u * (b - a), 1 / (beta + 1));
  }
};

}  // namespace

SemmesEstimate semmes_quasidistance(const Vector2<double>& z1, const Vector2<double>& z2,
                                    double beta, std::int64_t mc_samples, std::uint64_t seed,
                                    int strata) {
  if (!(beta > -1)) {
    std::ostringstream os;
    os << "weight |x|^" << beta << " is not locally integrable (need beta > -1)";
    throw PreconditionError(os.str());
  }
  if (mc_samples < 1) throw PreconditionError("semmes quasidistance needs mc_samples >= 1");
  if (strata < 1) throw PreconditionError("semmes quasidistance needs at least one stratum");
  if (!z1.allFinite() || !z2.allFinite()) throw std::invalid_argument("points must be finite");

  const double radius = (z1 - z2).norm();
  if (radius == 0) return {0, 0, 0, 0, 0};

  const double cx = z1(0);
  const double cy = z1(1);
  const double xlo = cx - radius;
  const double xhi = cx + radius;

  // Stratum edges: uniform in x, with the axis inserted as an extra edge.
  std::vector<double> edges;
  for (int s = 0; s <= strata; ++s) edges.push_back(xlo + (xhi - xlo) * s / strata);
  edges.front() = xlo;
  edges.back() = xhi;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    if (edges[k] < 0 && edges[k + 1] > 0) {
      edges.insert(edges.begin() + static_cast<std::ptrdiff_t>(k) + 1, 0.0);
      break;
    }
  }
  const auto n_strata = static_cast<std::int64_t>(edges.size() - 1);
  const std::int64_t per_stratum = std::max<std::int64_t>(1, mc_samples / n_strata);

  double mass = 0;
  double variance = 0;
  for (std::int64_t s = 0; s < n_strata; ++s) {
    const double a = edges[s];
    const double b = edges[s + 1];
    const bool negative = b <= 0;
    const PowerSlab slab{negative ? -b : a, negative ? -a : b, beta};
    const double slab_mass = slab.mass();
    if (!(slab_mass > 0)) continue;

    RandomStream rng(seed, static_cast<std::uint64_t>(s));
    double sum = 0;
    double sum_sq = 0;
    for (std::int64_t k = 0; k < per_stratum; ++k) {
      const double ax = slab.sample(rng.uniform());
      const double x = negative ? -ax : ax;
      const double y = rng.uniform(cy - radius, cy + radius);
      const double dx = x - cx;
      const double dy = y - cy;
      const double term = dx * dx + dy * dy <= radius * radius ? slab_mass * 2 * radius : 0.0;
      sum += term;
      sum_sq += term * term;
    }
    const double n = static_cast<double>(per_stratum);
    const double mean = sum / n;
    mass += mean;
    if (per_stratum > 1) {
      const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
      variance += var / n;
    }
  }

  const double se = std::sqrt(variance);
  const double delta = std::sqrt(mass);
  const double delta_se = delta > 0 ? se / (2 * delta) : 0;
  return {delta, mass, se, delta_se, delta > 0 ? delta_se / delta : 0};
}

}  // namespace grushin
