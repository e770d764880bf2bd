#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "grushin/core.hpp"
#include "grushin/region.hpp"

namespace grushin {

/// Distance between the images of two points. The default is |F(a) - F(b)|;
/// tests substitute other maps/metrics (e.g. the identity on (G, d)).
using ImageMetric = std::function<double(const GrushinPoint&, const GrushinPoint&)>;

ImageMetric flattening_image_metric(const Params& p, Norm norm = Norm::Euclidean);

struct EtaBin {
  double t_lo;
  double t_hi;
  std::int64_t count = 0;
  /// Largest image ratio observed in the bin (0 when empty).
  double max_rho = 0;
  /// Running maximum of max_rho over this and all lower bins.
  double envelope = 0;
};

struct EtaOptions {
  double t_min = 1e-2;
  double t_max = 1e2;
};

/// Binned upper envelope of image distance ratios against domain ratios.
struct EtaTable {
  std::vector<EtaBin> bins;
  std::int64_t triples = 0;
  /// Triples whose domain ratio fell outside [t_min, t_max).
  std::int64_t out_of_range = 0;
  /// Largest image ratio among triples with domain ratio t <= 1.
  double weak_constant = 0;

  /// Envelope at domain ratio t (the bin containing t).
  double envelope_at(double t) const;
};

/// Samples triples (z1, z2, z3) uniformly in `region` (triple k from stream
/// (seed, k), near-coincident triples redrawn), and records per log-spaced bin of
/// t = d(z3, z1) / d(z2, z1) the largest rho = |F(z3) - F(z1)| / |F(z2) - F(z1)|.
EtaTable eta_estimate(const Rectangle& region, const Params& p, std::int64_t n_triples,
                      std::uint64_t seed, int n_bins, const ImageMetric& image = {},
                      EtaOptions options = {});

}  // namespace grushin
