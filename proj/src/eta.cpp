#include "grushin/eta.hpp"

#include <algorithm>
#include <cmath>

#include "grushin/comparability.hpp"
#include "grushin/qs_maps.hpp"
#include "grushin/random.hpp"

namespace grushin {

ImageMetric flattening_image_metric(const Params& p, Norm norm) {
  return [p, norm](const GrushinPoint& a, const GrushinPoint& b) {
    return norm_distance(forward_map(a, p), forward_map(b, p), norm);
  };
}

double EtaTable::envelope_at(double t) const {
  for (const auto& b : bins) {
    if (t >= b.t_lo && t < b.t_hi) return b.envelope;
  }
  return t < bins.front().t_lo ? bins.front().envelope : bins.back().envelope;
}

EtaTable eta_estimate(const Rectangle& region, const Params& p, std::int64_t n_triples,
                      std::uint64_t seed, int n_bins, const ImageMetric& image,
                      EtaOptions options) {
  region.validate();
  if (n_triples < 1) throw PreconditionError("eta estimate needs at least one triple");
  if (n_bins < 2) throw PreconditionError("eta estimate needs at least two bins");
  if (!(options.t_min > 0) || !(options.t_max > options.t_min)) {
    throw PreconditionError("eta estimate needs 0 < t_min < t_max");
  }
  const ImageMetric metric = image ? image : flattening_image_metric(p);

  EtaTable table;
  table.triples = n_triples;
  const double log_lo = std::log(options.t_min);
  const double log_width = (std::log(options.t_max) - log_lo) / n_bins;
  table.bins.resize(static_cast<std::size_t>(n_bins));
  for (int b = 0; b < n_bins; ++b) {
    table.bins[b].t_lo = std::exp(log_lo + b * log_width);
    table.bins[b].t_hi = std::exp(log_lo + (b + 1) * log_width);
  }
  table.bins.front().t_lo = options.t_min;
  table.bins.back().t_hi = options.t_max;

  const auto draw = [&](RandomStream& rng) {
    return GrushinPoint(rng.uniform(region.xmin, region.xmax),
                        rng.uniform(region.ymin, region.ymax));
  };
  for (std::int64_t k = 0; k < n_triples; ++k) {
    RandomStream rng(seed, static_cast<std::uint64_t>(k));
    for (;;) {
      const GrushinPoint z1 = draw(rng);
      const GrushinPoint z2 = draw(rng);
      const GrushinPoint z3 = draw(rng);
      const double d21 = quasidistance(z2, z1, p);
      const double d31 = quasidistance(z3, z1, p);
      if (d21 < kDegenerateDistance || d31 < kDegenerateDistance ||
          quasidistance(z3, z2, p) < kDegenerateDistance) {
        continue;
      }
      const double t = d31 / d21;
      const double rho = metric(z3, z1) / metric(z2, z1);
      if (t <= 1) table.weak_constant = std::max(table.weak_constant, rho);
      const double pos = (std::log(t) - log_lo) / log_width;
      if (!(pos >= 0) || !(pos < n_bins)) {
        ++table.out_of_range;
      } else {
        auto& bin = table.bins[static_cast<std::size_t>(pos)];
        ++bin.count;
        bin.max_rho = std::max(bin.max_rho, rho);
      }
      break;
    }
  }

  double running = 0;
  for (auto& b : table.bins) {
    running = std::max(running, b.max_rho);
    b.envelope = running;
  }
  return table;
}

}  // namespace grushin
