#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "grushin/jacobian.hpp"
#include "grushin/qs_maps.hpp"
#include "grushin/random.hpp"
#include "grushin/semmes.hpp"
#include "oracles.hpp"

namespace grushin {
namespace {

using oracle::area_distortion;
using oracle::ball_mass_oracle;

TEST(AlphaForBetaTest, Examples) {
  const auto m1 = alpha_for_beta(-1.0);
  EXPECT_EQ(m1.regime, WeightRegime::PaperRange);
  EXPECT_DOUBLE_EQ(*m1.derived_alpha, 2.0);
  EXPECT_DOUBLE_EQ(beta_for_alpha(2.0), -1.0);

  const auto m23 = alpha_for_beta(-2.0 / 3.0);
  EXPECT_EQ(m23.regime, WeightRegime::SemmesRange);
  EXPECT_NEAR(*m23.derived_alpha, 1.0, 1e-15);

  const auto zero = alpha_for_beta(0.0);
  EXPECT_EQ(zero.regime, WeightRegime::TrivialIdentity);
  EXPECT_FALSE(zero.derived_alpha);
}

TEST(AlphaForBetaTest, RegimeBoundaries) {
  EXPECT_EQ(alpha_for_beta(0.5).regime, WeightRegime::Rejected);
  EXPECT_EQ(alpha_for_beta(NAN).regime, WeightRegime::Rejected);
  EXPECT_EQ(alpha_for_beta(-2.0).regime, WeightRegime::Open);
  EXPECT_EQ(alpha_for_beta(-3.0).regime, WeightRegime::Open);
  EXPECT_FALSE(alpha_for_beta(-3.0).derived_alpha);
  EXPECT_EQ(alpha_for_beta(-1.0).regime, WeightRegime::PaperRange);
  EXPECT_EQ(alpha_for_beta(std::nextafter(-1.0, 0.0)).regime, WeightRegime::SemmesRange);
  EXPECT_EQ(alpha_for_beta(std::nextafter(-2.0, 0.0)).regime, WeightRegime::PaperRange);
}

TEST(AlphaForBetaTest, RoundTripAndMonotone) {
  double prev_alpha = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 1000; ++k) {
    const double beta = -2.0 + 2.0 * k / 1000;
    const auto w = alpha_for_beta(beta);
    ASSERT_TRUE(w.derived_alpha);
    EXPECT_GT(*w.derived_alpha, 0);
    EXPECT_NEAR(beta_for_alpha(*w.derived_alpha), beta, 1e-12);
    EXPECT_LT(*w.derived_alpha, prev_alpha);
    prev_alpha = *w.derived_alpha;
  }
  EXPECT_GT(*alpha_for_beta(-2 + 1e-9).derived_alpha, 1e8);
  EXPECT_LT(*alpha_for_beta(-1e-9).derived_alpha, 1e-8);
}

TEST(JacobianDensityTest, Examples) {
  const auto unit = jacobian_density(1.0, -1.0);
  const double constant = unit.total;
  EXPECT_DOUBLE_EQ(constant, 0.5);
  const auto quarter = jacobian_density(0.25, -1.0);
  EXPECT_NEAR(quarter.total, 4 * constant, 1e-14);
  EXPECT_DOUBLE_EQ(quarter.total, quarter.euclidean_factor * quarter.grushin_density);
  EXPECT_NEAR(area_distortion(0.25, 1e-5, -1.0) / quarter.total, 1.0, 0.01);
}

TEST(JacobianDensityTest, LogLogSlopeIsBeta) {
  RandomStream rng(53, 0);
  for (int k = 0; k < 10; ++k) {
    const double beta = rng.uniform(-1.99, -0.01);
    const double u1 = std::exp(rng.uniform(-6, 3)), u2 = std::exp(rng.uniform(-6, 3));
    if (std::abs(std::log(u2 / u1)) < 0.1) continue;
    const double slope = std::log(jacobian_density(u2, beta).total / jacobian_density(u1, beta).total) /
                         std::log(u2 / u1);
    EXPECT_NEAR(slope, beta, 1e-9);
  }
  const double s = std::log(jacobian_density(0.9, -0.5).total / jacobian_density(0.1, -0.5).total) /
                   std::log(9.0);
  EXPECT_NEAR(s, -0.5, 1e-9);
}

TEST(JacobianDensityTest, AgreesWithAreaDistortion) {
  RandomStream rng(59, 0);
  for (int k = 0; k < 200; ++k) {
    const double beta = rng.uniform(-1.9, -0.1);
    const double u = (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(0.05, 3);
    const double side = 1e-4;
    const double oracle = u > 0 ? area_distortion(u, side, beta) : area_distortion(-u - side, side, beta);
    EXPECT_NEAR(oracle / jacobian_density(u, beta).total, 1.0, 0.01) << beta << " " << u;
  }
}

TEST(JacobianDensityTest, RejectsOutOfRange) {
  EXPECT_THROW(jacobian_density(1.0, 0.0), PreconditionError);
  EXPECT_THROW(jacobian_density(1.0, -2.0), PreconditionError);
  EXPECT_THROW(jacobian_density(1.0, 0.3), PreconditionError);
  EXPECT_THROW(jacobian_density(0.0, -1.0), PreconditionError);
}

TEST(AclTest, Examples) {
  const auto one = acl_integrability(1.0);
  EXPECT_TRUE(one.integrable);
  ASSERT_TRUE(one.integral);
  EXPECT_NEAR(*one.integral, 2.0, 1e-12);
  // Partial integrals over [delta, 1] approach 2 - 2 sqrt(delta).
  for (std::size_t k = 0; k < one.deltas.size(); ++k) {
    EXPECT_NEAR(one.partial_integrals[k], 2 - 2 * std::sqrt(one.deltas[k]), 1e-9);
  }

  const auto two = acl_integrability(2.0);
  EXPECT_FALSE(two.integrable);
  EXPECT_FALSE(two.integral);
  EXPECT_TRUE(two.divergence_certified);

  const auto three = acl_integrability(3.0);
  EXPECT_FALSE(three.integrable);
  EXPECT_TRUE(three.divergence_certified);
  // Grows like delta^(-1/2): integral over [delta, 1] of x^(-3/2) = 2 (delta^(-1/2) - 1).
  for (std::size_t k = 0; k < three.deltas.size(); ++k) {
    const double expected = 2 * (1 / std::sqrt(three.deltas[k]) - 1);
    EXPECT_NEAR(three.partial_integrals[k] / expected, 1.0, 1e-9);
  }
}

TEST(AclTest, ThresholdSweep) {
  for (int k = -100; k <= 100; ++k) {
    const double t = 2.0 + 0.03 * k;
    EXPECT_EQ(acl_integrability(t).integrable, t < 2) << t;
  }
  EXPECT_TRUE(acl_integrability(2 - 1e-9).integrable);
  EXPECT_FALSE(acl_integrability(2 + 1e-9).integrable);
  EXPECT_TRUE(acl_integrability(2 + 1e-9).divergence_certified);
  EXPECT_FALSE(acl_integrability(1.5).divergence_certified);
}

TEST(SemmesTest, FlatWeightIsDiskArea) {
  const auto est = semmes_quasidistance({0, 0}, {1, 0}, 0.0, 200000, 1);
  EXPECT_NEAR(est.delta, std::sqrt(std::numbers::pi), 3 * est.delta_std_error);
  EXPECT_GT(est.delta_std_error, 0);

  RandomStream rng(61, 0);
  for (int k = 0; k < 20; ++k) {
    const Vector2<double> a(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const Vector2<double> b(rng.uniform(-2, 2), rng.uniform(-2, 2));
    const auto e = semmes_quasidistance(a, b, 0.0, 100000, static_cast<std::uint64_t>(k));
    EXPECT_NEAR(e.delta, std::sqrt(std::numbers::pi) * (a - b).norm(), 3 * e.delta_std_error);
  }
}

TEST(SemmesTest, SingularWeightMatchesQuadratureOracle) {
  // Closed form for the unit disk at the origin: 2 B(1/4, 3/2).
  const double closed = 2 * std::beta(0.25, 1.5);
  const double oracle = ball_mass_oracle(0, 1, -0.5);
  ASSERT_NEAR(oracle, closed, 1e-6);

  const auto est = semmes_quasidistance({0, 0}, {1, 0}, -0.5, 400000, 2);
  EXPECT_NEAR(est.mass, oracle, 3 * est.mass_std_error);
  EXPECT_NEAR(est.delta, std::sqrt(oracle), 3 * est.delta_std_error);

  // Off-centre ball straddling the axis.
  const double off = ball_mass_oracle(0.3, 0.8, -0.7);
  const auto est2 = semmes_quasidistance({0.3, 1.0}, {0.3, 1.8}, -0.7, 400000, 3);
  EXPECT_NEAR(est2.mass, off, 3 * est2.mass_std_error);
}

TEST(SemmesTest, DoublingRatioMatchesOracle) {
  // The doubling constant of |x|^beta grows like 1/(1+beta); near beta = -1 the
  // ratio delta(2r)/delta(r) reaches about 4.8, so compare against quadrature.
  RandomStream rng(67, 0);
  for (double beta : {-0.9, -0.5, -0.2, 0.0}) {
    for (int k = 0; k < 20; ++k) {
      const Vector2<double> z(rng.uniform(-1, 1), rng.uniform(-1, 1));
      const double r = rng.uniform(0.01, 1);
      const auto near = semmes_quasidistance(z, z + Vector2<double>(r, 0), beta, 20000, k);
      const auto far = semmes_quasidistance(z, z + Vector2<double>(2 * r, 0), beta, 20000, k);
      const double ratio = far.delta / near.delta;
      const double expected =
          std::sqrt(ball_mass_oracle(z.x(), 2 * r, beta) / ball_mass_oracle(z.x(), r, beta));
      const double se = ratio * std::hypot(far.delta_std_error / far.delta,
                                           near.delta_std_error / near.delta);
      EXPECT_GE(expected, 1.0);
      EXPECT_NEAR(ratio, expected, 4 * se + 1e-12) << "beta=" << beta << " k=" << k;
    }
  }
}

TEST(SemmesTest, RejectsNonIntegrableAndDegenerate) {
  EXPECT_THROW(semmes_quasidistance({0, 0}, {1, 0}, -1.0, 100, 1), PreconditionError);
  EXPECT_THROW(semmes_quasidistance({0, 0}, {1, 0}, -1.5, 100, 1), PreconditionError);
  EXPECT_THROW(semmes_quasidistance({0, 0}, {1, 0}, 0.0, 0, 1), PreconditionError);
  EXPECT_EQ(semmes_quasidistance({0.5, 0.5}, {0.5, 0.5}, -0.5, 100, 1).delta, 0.0);
}

TEST(SemmesTest, Deterministic) {
  const auto a = semmes_quasidistance({0.1, 0}, {0.9, 0.2}, -0.4, 5000, 11);
  const auto b = semmes_quasidistance({0.1, 0}, {0.9, 0.2}, -0.4, 5000, 11);
  EXPECT_EQ(a.delta, b.delta);
  EXPECT_EQ(a.mass_std_error, b.mass_std_error);
}

}  // namespace
}  // namespace grushin
