#include "grushin/jacobian.hpp"

#include <algorithm>

#include "grushin/quadrature.hpp"

namespace grushin {

const char* to_string(WeightRegime r) {
  switch (r) {
    case WeightRegime::TrivialIdentity: return "TRIVIAL_IDENTITY";
    case WeightRegime::SemmesRange: return "SEMMES_RANGE";
    case WeightRegime::PaperRange: return "PAPER_RANGE";
    case WeightRegime::Open: return "OPEN";
    case WeightRegime::Rejected: return "REJECTED";
  }
  return "UNKNOWN";
}

AclReport acl_integrability(double t) {
  AclReport report{t, t < 2, std::nullopt, {}, {}, false};
  const double exponent = -t / 2;
  if (report.integrable) report.integral = 1.0 / (1.0 + exponent);

  // Geometric panels [10^-(k+1), 10^-k] keep the power-law integrand well scaled.
  auto f = [exponent](double x) { return std::pow(x, exponent); };
  double partial = 0;
  for (int k = 0; k < 12; ++k) {
    const double hi = std::pow(10.0, -k);
    const double lo = std::pow(10.0, -(k + 1));
    partial += quadrature::integrate<double>(f, lo, hi, 1e-12 * std::max(1.0, partial));
    report.deltas.push_back(lo);
    report.partial_integrals.push_back(partial);
  }

  if (!report.integrable) {
    // Each decade adds at least as much as the previous one (x^(-t/2) with
    // t >= 2 gives a nondecreasing per-decade contribution), so the partial
    // integrals grow without bound.
    bool increments_nondecreasing = true;
    for (std::size_t k = 2; k < report.partial_integrals.size(); ++k) {
      const double inc = report.partial_integrals[k] - report.partial_integrals[k - 1];
      const double prev = report.partial_integrals[k - 1] - report.partial_integrals[k - 2];
      if (inc < prev * (1 - 1e-9)) increments_nondecreasing = false;
    }
    report.divergence_certified = increments_nondecreasing && report.partial_integrals.front() > 0;
  }
  return report;
}

}  // namespace grushin
