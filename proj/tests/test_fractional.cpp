#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "circlaw/circular_bm.hpp"
#include "circlaw/circular_pseudo.hpp"
#include "circlaw/fractional.hpp"

using namespace circlaw;
using namespace circlaw::frac;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// E_{1/2}(-x) = exp(x^2) erfc(x).
double ml_half(double x) {
  if (x < 100.0) {
    const long double xl = x;
    return static_cast<double>(std::exp(xl * xl) * std::erfc(xl));
  }
  const double y = 1.0 / (x * x);
  return (1.0 - y / 2.0 + 3.0 * y * y / 4.0 - 15.0 * y * y * y / 8.0) / (x * std::sqrt(kPi));
}

// 1/2pi + (1/pi) sum_{k<=N} coeff(k) cos k theta.
template <class C>
double direct_series(C coeff, double theta, int N) {
  double s = 0.0;
  for (int k = N; k >= 1; --k) s += coeff(k) * std::cos(k * theta);
  return 1.0 / kTwoPi + s / kPi;
}

double law_mass(const HarmonicLaw& law, int nodes) {
  double m = 0.0;
  for (int i = 0; i < nodes; ++i) m += law.density(kTwoPi * (i + 0.5) / nodes);
  return m * kTwoPi / nodes;
}

}  // namespace

TEST(TimeFractional, NuOneEqualsEvenOrderExactly) {
  for (int n : {1, 2}) {
    const auto a = v_time_frac(n, 1.0, 0.7);
    const auto b = pseudo::v_even(n, 0.7);
    ASSERT_EQ(a.order(), b.order());
    for (std::size_t k = 0; k < a.order(); ++k) EXPECT_EQ(a.cos_coeffs[k], b.cos_coeffs[k]);
    EXPECT_TRUE(a.cos_tail.empty());
  }
}

TEST(TimeFractional, HalfOrderMatchesErfcOracle) {
  const double t = 1.0;
  const auto law = v_time_frac(1, 0.5, t);
  EXPECT_FALSE(law.cos_tail.empty());
  EXPECT_LE(law.tail_bound, 1e-10);
  for (double th : {0.5, 1.0, 2.0, 3.0}) {
    const double oracle =
        direct_series([&](int k) { return ml_half(double(k) * k * std::sqrt(t)); }, th, 200000);
    EXPECT_NEAR(law.density(th), oracle, 1e-9) << th;
  }
}

TEST(TimeFractional, UnitMassAndEven) {
  for (double nu : {0.3, 0.6, 0.9}) {
    const auto law = v_time_frac(1, nu, 1.0);
    EXPECT_DOUBLE_EQ(law.mass(), 1.0);
    EXPECT_NEAR(law.cdf(kTwoPi), 1.0, 1e-12) << nu;
    // Midpoint nodes alias the k^-2 tail at multiples of 4096.
    EXPECT_NEAR(law_mass(law, 4096), 1.0, 2e-7) << nu;
    EXPECT_DOUBLE_EQ(law.density(0.8), law.density(-0.8));
  }
}

TEST(TimeFractional, CoefficientsDecreaseInK) {
  const auto law = v_time_frac(2, 0.4, 0.5);
  for (std::size_t k = 1; k < law.order(); ++k) EXPECT_GT(law.cos_coeffs[k - 1], law.cos_coeffs[k]);
}

TEST(SpaceFractional, BetaOneIsCircularBm) {
  for (double th : {0.0, 1.0, 2.5}) {
    EXPECT_NEAR(p_space_frac(1.0, th, 1.0), bm::circ_bm_density_wrapped(th, 1.0), 1e-12);
  }
  EXPECT_NEAR(p_space_frac(1.0, 0.0, 1.0), 0.39894228, 1e-8);
}

TEST(SpaceFractional, HalfOrderClosedForm) {
  auto closed = [](double th, double t) {
    const double r = std::exp(-t / std::sqrt(2.0));
    return (1.0 - r * r) / (1.0 + r * r - 2.0 * r * std::cos(th)) / kTwoPi;
  };
  EXPECT_NEAR(closed(0.0, 1.0), 0.46876, 5e-6);
  for (double t : {0.3, 1.0, 4.0}) {
    for (double th : {0.0, 0.4, 1.5, kPi}) {
      Tolerance tol;
      tol.abs_tol = 1e-12;
      EXPECT_NEAR(p_space_frac(0.5, th, t, tol), closed(th, t), 1e-10);
      EXPECT_NEAR(poisson_kernel_half(th, t), closed(th, t), 1e-12);
    }
  }
}

TEST(SpaceFractional, AverageIsUniformMass) {
  for (double beta : {0.3, 0.7}) {
    EXPECT_NEAR(law_mass(space_frac_law(beta, 1.0), 2048), 1.0, 1e-10);
  }
}

TEST(SpaceFractional, SemigroupMultiplicative) {
  const auto a = space_frac_law(0.6, 0.4);
  const auto b = space_frac_law(0.6, 0.9);
  const auto ab = space_frac_law(0.6, 1.3);
  for (std::size_t k = 0; k < std::min({a.order(), b.order(), ab.order()}); ++k) {
    EXPECT_NEAR(kPi * ab.cos_coeffs[k], kPi * a.cos_coeffs[k] * kPi * b.cos_coeffs[k],
                1e-13 * kPi * ab.cos_coeffs[k]);
  }
}

TEST(FracLaplacian, Eigenvalues) {
  HarmonicLaw law;
  law.cos_coeffs = {0.0, 1.0};
  const auto out = frac_laplacian_apply(0.5, law);
  EXPECT_NEAR(out.cos_coeffs[1], std::sqrt(2.0), 1e-15);
  EXPECT_EQ(out.a0, 0.0);
  const auto gen = frac_laplacian_apply(0.5, law, true);
  EXPECT_NEAR(gen.cos_coeffs[1], -std::sqrt(2.0), 1e-15);
}

TEST(FracLaplacian, BetaOneHalvesSquaredFrequency) {
  const auto law = bm::bm_law(1.0);
  const auto out = frac_laplacian_apply(1.0, law);
  for (std::size_t k = 1; k <= law.order(); ++k) {
    EXPECT_NEAR(out.cos_coeffs[k - 1], 0.5 * double(k) * k * law.cos_coeffs[k - 1], 1e-16);
  }
}

TEST(FracLaplacian, TimeDerivativeResidual) {
  const double beta = 0.7, t = 1.0, h = 1e-4;
  const auto gen = frac_laplacian_apply(beta, space_frac_law(beta, t), true);
  const auto up = space_frac_law(beta, t + h);
  const auto dn = space_frac_law(beta, t - h);
  for (std::size_t k = 0; k < std::min({gen.order(), up.order(), dn.order()}); ++k) {
    const double fd = (up.cos_coeffs[k] - dn.cos_coeffs[k]) / (2.0 * h);
    EXPECT_NEAR(fd, gen.cos_coeffs[k], 1e-7);
  }
}

TEST(FracLaplacian, PositiveSemidefinite) {
  HarmonicLaw law;
  law.cos_coeffs.assign(50, 1.0);
  for (double beta : {0.1, 0.5, 1.0}) {
    for (double v : frac_laplacian_apply(beta, law).cos_coeffs) EXPECT_GE(v, 0.0);
  }
}

TEST(WrappedStable, GeometricClosedForm) {
  const double e = std::exp(-1.0);
  const double expected = (1.0 + e) / (1.0 - e) / kTwoPi;
  EXPECT_NEAR(p_wrapped_stable(0.5, 0.0, 1.0), expected, 1e-10);
  // (1/2pi) coth(1/2).
  EXPECT_NEAR(expected, 0.344404, 1e-6);
}

TEST(WrappedStable, BetaOneIsEvenOrderTwo) {
  for (double th : {0.0, 1.0, 3.0}) {
    EXPECT_NEAR(p_wrapped_stable(1.0, th, 0.8), pseudo::v_even(1, 0.8).density(th), 1e-12);
  }
}

TEST(WrappedStable, EqualInLawWithSubordinatedBm) {
  Tolerance tol;
  tol.abs_tol = 1e-12;
  for (double beta : {0.4, 0.5, 0.75, 1.0}) {
    for (double t : {0.5, 1.0, 2.0}) {
      for (int i = 0; i < 12; ++i) {
        const double th = kTwoPi * i / 12.0;
        EXPECT_NEAR(p_wrapped_stable(beta, th, t, tol),
                    p_space_frac(beta, th, std::pow(2.0, beta) * t, tol), 1e-10);
      }
    }
  }
}

TEST(WrappedStable, SlowDecayIsReported) {
  const auto law = wrapped_stable_law(0.05, 0.01);
  EXPECT_EQ(law.order(), kMaxTerms);
  EXPECT_GT(law.tail_bound, 1e-10);
  EXPECT_NE(law.meta.find("slow decay"), std::string::npos);
}

TEST(SpaceTimeFractional, NuOneIsSpaceFractional) {
  for (double th : {0.0, 1.0, 2.0}) {
    EXPECT_NEAR(p_space_time_frac(1.0, 0.6, th, 1.0), p_space_frac(0.6, th, 1.0), 1e-15);
  }
}

TEST(SpaceTimeFractional, BetaOneIsTimeFractionalBm) {
  const double nu = 0.6, t = 1.0;
  const double rescaled = std::pow(0.5, 1.0 / nu) * t;
  for (double th : {0.3, 1.0, 2.0}) {
    EXPECT_NEAR(p_space_time_frac(nu, 1.0, th, t), v_time_frac(1, nu, rescaled).density(th), 1e-10);
  }
}

TEST(SpaceTimeFractional, HalfOrderMatchesErfcOracle) {
  const double t = 1.0, beta = 0.75;
  for (double th : {0.5, 1.5, 3.0}) {
    const double oracle = direct_series(
        [&](int k) { return ml_half(std::pow(0.5 * double(k) * k, beta) * std::sqrt(t)); }, th,
        400000);
    EXPECT_NEAR(p_space_time_frac(0.5, beta, th, t), oracle, 1e-8) << th;
  }
}

TEST(SpaceTimeFractional, SingularAtOriginForSmallBeta) {
  const auto law = space_time_frac_law(0.5, 0.5, 1.0);
  EXPECT_TRUE(std::isinf(law.density(0.0)));
  EXPECT_TRUE(std::isfinite(law.density(0.1)));
  EXPECT_NEAR(law_mass(law, 8192), 1.0, 1e-3);
}
