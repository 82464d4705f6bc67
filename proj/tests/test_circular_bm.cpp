#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "circlaw/circular_bm.hpp"

using namespace circlaw;
using namespace circlaw::bm;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double wrapped_gaussian(double theta, double t) {
  double sum = 0.0;
  for (int m = -60; m <= 60; ++m) {
    const double x = theta + kTwoPi * m;
    sum += std::exp(-x * x / (2.0 * t)) / std::sqrt(kTwoPi * t);
  }
  return sum;
}

// Eigenfunction expansion of the double-barrier survival probability on (-theta, theta).
double maxdist_eigen(double theta, double t) {
  double sum = 0.0;
  for (int k = 0; k < 20000; ++k) {
    const double j = 2.0 * k + 1.0;
    const double term = std::exp(-j * j * kPi * kPi * t / (8.0 * theta * theta)) / j;
    sum += (k % 2 == 0) ? term : -term;
    if (term < 1e-20) break;
  }
  return 4.0 / kPi * sum;
}

}  // namespace

TEST(CircularBm, StandardGaussianAtOrigin) {
  EXPECT_NEAR(circ_bm_density(0.0, 1.0), 0.39894228, 1e-8);
}

TEST(CircularBm, SeriesAndWrappedRoutesAgree) {
  for (double t : {0.05, 0.5, 1.0, 3.0, 10.0}) {
    for (int i = 0; i <= 16; ++i) {
      const double th = -kPi + kTwoPi * i / 16.0;
      const double s = circ_bm_density_series(th, t);
      EXPECT_NEAR(s, circ_bm_density_wrapped(th, t), 1e-10) << th << " " << t;
      EXPECT_NEAR(s, wrapped_gaussian(th, t), 1e-10);
    }
  }
}

TEST(CircularBm, LimitsAndPeriodicity) {
  EXPECT_NEAR(circ_bm_density(1.3, 60.0), 1.0 / kTwoPi, 1e-12);
  EXPECT_DOUBLE_EQ(circ_bm_density(kPi, 1.0), circ_bm_density(-kPi, 1.0));
  EXPECT_THROW(static_cast<void>(circ_bm_density(0.0, 0.0)), DomainError);
}

TEST(CircularBm, UnitMassAndPositive) {
  for (double t : {0.1, 1.0, 4.0}) {
    const auto law = bm_law(t);
    for (std::size_t k = 1; k < law.cos_coeffs.size(); ++k) {
      EXPECT_GT(law.cos_coeffs[k - 1], law.cos_coeffs[k]);
      EXPECT_GT(law.cos_coeffs[k], 0.0);
    }
    const int nodes = 2048;
    double mass = 0.0;
    double lo = 1.0;
    for (int i = 0; i < nodes; ++i) {
      const double v = circ_bm_density(kTwoPi * i / nodes, t);
      mass += v * kTwoPi / nodes;
      lo = std::min(lo, v);
    }
    EXPECT_NEAR(mass, 1.0, 1e-10);
    EXPECT_GT(lo, 0.0);
  }
}

TEST(VonMises, UniformAtZeroConcentration) {
  EXPECT_DOUBLE_EQ(von_mises_density(2.0, 0.0), 1.0 / kTwoPi);
}

TEST(VonMises, BesselOracle) {
  const double expected = std::exp(1.0) / (kTwoPi * boost::math::cyl_bessel_i(0, 1.0));
  EXPECT_NEAR(von_mises_density(0.0, 1.0), expected, 1e-14);
  EXPECT_NEAR(von_mises_density(0.0, 1.0), 0.34171, 5e-6);
  for (double k : {0.3, 2.0, 7.5}) {
    for (double th : {0.0, 1.0, 2.5}) {
      const double oracle =
          std::exp(k * std::cos(th)) / (kTwoPi * boost::math::cyl_bessel_i(0, k));
      EXPECT_NEAR(von_mises_density(th, k), oracle, 1e-12 * std::max(1.0, oracle));
    }
  }
}

TEST(VonMises, ExponentialAndSeriesFormsAgree) {
  EXPECT_NEAR(von_mises_density(1.2, 2.0), von_mises_series(1.2, 2.0), 1e-9);
  for (double k : {0.5, 5.0, 40.0}) {
    for (double th : {0.0, 0.7, kPi}) {
      EXPECT_NEAR(von_mises_density(th, k), von_mises_series(th, k), 1e-9) << k << " " << th;
    }
  }
}

TEST(VonMises, LargeConcentrationFinite) {
  const double v = von_mises_density(0.0, 2000.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_NEAR(v, std::sqrt(2000.0 / kTwoPi), 0.01 * v);
}

TEST(VonMises, MomentMatchingDiagnostic) {
  for (double t : {0.5, 1.0, 3.0}) {
    const double k = von_mises_matching_kappa(t);
    const double r = boost::math::cyl_bessel_i(1, k) / boost::math::cyl_bessel_i(0, k);
    EXPECT_NEAR(r, std::exp(-0.5 * t), 1e-12);
    const double gap = bm_von_mises_gap(t);
    EXPECT_TRUE(std::isfinite(gap));
    EXPECT_LT(gap, 0.05);
  }
}

TEST(Quadrant, MatchesDensityQuadrature) {
  for (double t : {0.3, 1.0, 2.5}) {
    const double q = simpson([&](double x) { return wrapped_gaussian(x, t); }, -0.5 * kPi,
                             0.5 * kPi, 4000);
    EXPECT_NEAR(bm_quadrant_prob(t), q, 1e-9) << t;
  }
}

TEST(Quadrant, Limits) {
  EXPECT_NEAR(bm_quadrant_prob(80.0), 0.5, 1e-12);
  EXPECT_NEAR(bm_quadrant_prob(1e-4), 1.0, 1e-12);
}

TEST(Quadrant, ExponentialBound) {
  // The bound drops below 1 past t = -2 ln(pi/4); it holds for every t > 0.
  EXPECT_FALSE(bm_quadrant_bound_applies(0.48));
  EXPECT_TRUE(bm_quadrant_bound_applies(0.49));
  for (int i = 0; i <= 200; ++i) {
    const double t = 0.21 + (10.0 - 0.21) * i / 200.0;
    EXPECT_LE(bm_quadrant_prob(t), bm_quadrant_bound(t)) << t;
  }
}

TEST(MaxDist, EigenSeriesOracle) {
  for (double th : {0.3, 1.0, 2.0, kPi}) {
    for (double t : {0.05, 0.5, 1.0, 4.0, 20.0}) {
      EXPECT_NEAR(bm_maxdist_cdf(th, t), maxdist_eigen(th, t), 1e-12) << th << " " << t;
    }
  }
}

TEST(MaxDist, Limits) {
  EXPECT_NEAR(bm_maxdist_cdf(kPi, 1e-4), 1.0, 1e-15);
  EXPECT_NEAR(bm_maxdist_cdf(1e-3, 1.0), 0.0, 1e-15);
  EXPECT_THROW(static_cast<void>(bm_maxdist_cdf(0.0, 1.0)), DomainError);
  EXPECT_THROW(static_cast<void>(bm_maxdist_cdf(3.5, 1.0)), DomainError);
}

TEST(MaxDist, MonotoneOnGrid) {
  for (int i = 1; i <= 10; ++i) {
    const double th = kPi * i / 10.0;
    for (int j = 1; j <= 10; ++j) {
      const double t = 0.2 * j;
      const double v = bm_maxdist_cdf(th, t);
      if (j > 1) EXPECT_LE(v, bm_maxdist_cdf(th, 0.2 * (j - 1)) + 1e-15);
      if (i > 1) EXPECT_GE(v, bm_maxdist_cdf(kPi * (i - 1) / 10.0, t) - 1e-15);
    }
  }
}

TEST(FirstPassage, MatchesCentralDifference) {
  const double h = 1e-4;
  const double fd = -(bm_maxdist_cdf(1.0, 1.0 + h) - bm_maxdist_cdf(1.0, 1.0 - h)) / (2.0 * h);
  EXPECT_NEAR(bm_first_passage_density(1.0, 1.0), fd, 1e-6);
}

TEST(FirstPassage, IntegratesToComplement) {
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double t) { return bm_first_passage_density(1.0, t); }, 1e-6, 50.0, 20, 1e-13);
  EXPECT_NEAR(integral, 1.0 - bm_maxdist_cdf(1.0, 50.0), 1e-8);
}

TEST(FirstPassage, Nonnegative) {
  for (double th : {0.5, 1.0, 2.0, kPi}) {
    for (int i = 0; i <= 200; ++i) {
      const double t = 0.01 * std::pow(2000.0, i / 200.0);
      EXPECT_GE(bm_first_passage_density(th, t), 0.0);
    }
  }
}

TEST(FirstPassage, SmallTimeTwoBarrierLine) {
  // Exit from (-theta, theta) at small t: twice the one-sided line first-passage density.
  const double t = 0.01;
  const double one_sided = std::exp(-1.0 / (2.0 * t)) / std::sqrt(kTwoPi * t * t * t);
  EXPECT_NEAR(bm_first_passage_density(1.0, t) / one_sided, 2.0, 1e-10);
}
