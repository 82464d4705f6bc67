#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/airy.hpp>

#include "circlaw/line_solutions.hpp"

using namespace circlaw;
using namespace circlaw::line;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double gaussian(double x, double t) {
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

// int u(x) exp(-(x/L)^2) dx. The window only perturbs the Fourier value at 0
// through derivatives of exp(i t xi^p), which vanish below order 2p, so the
// bias is O((t / L^p)^2).
template <class F>
double windowed_mass(F u, double width = 30.0) {
  return simpson([&](double x) { return u(x) * std::exp(-(x / width) * (x / width)); },
                 -5.5 * width, 5.5 * width, 40000);
}

}  // namespace

TEST(OrderParams, Constants) {
  const auto e1 = OrderParams::even(1);
  const auto e2 = OrderParams::even(2);
  EXPECT_EQ(e1.order(), 2);
  EXPECT_EQ(e1.sign_constant(), 1.0);
  EXPECT_EQ(e2.sign_constant(), -1.0);
  const auto o1 = OrderParams::odd(1);
  EXPECT_EQ(o1.order(), 3);
  EXPECT_EQ(o1.sign_constant(), -1.0);
  EXPECT_NEAR(o1.a(), std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(o1.b(), 0.5, 1e-15);
  for (int n : {1, 2, 7}) {
    const auto o = OrderParams::odd(n);
    EXPECT_NEAR(o.a() * o.a() + o.b() * o.b(), 1.0, 1e-15);
  }
  EXPECT_THROW(OrderParams::even(0), DomainError);
  EXPECT_THROW(static_cast<void>(e1.a()), DomainError);
}

TEST(UEven, GaussianClosedForm) {
  const Tolerance tight{1e-13};
  EXPECT_NEAR(u_even(OrderParams::even(1), 0.0, 1.0), 1.0 / (2.0 * std::sqrt(kPi)), 1e-10);
  for (double t : {0.05, 0.5, 1.0, 3.0}) {
    for (double x : {-4.0, -1.0, 0.0, 0.3, 2.0, 6.0}) {
      EXPECT_NEAR(u_even(OrderParams::even(1), x, t, tight), gaussian(x, t), 1e-12)
          << "x=" << x << " t=" << t;
    }
  }
}

TEST(UEven, FourthOrderAtOrigin) {
  // Gamma(5/4) = int_0^inf exp(-xi^4) dxi, computed independently.
  const double oracle = simpson([](double xi) { return std::exp(-std::pow(xi, 4.0)); }, 0.0, 8.0,
                                40000) / kPi;
  EXPECT_NEAR(oracle, std::tgamma(1.25) / kPi, 1e-12);
  EXPECT_NEAR(u_even(OrderParams::even(2), 0.0, 1.0), oracle, 1e-10);
}

TEST(UEven, FourthOrderIsSignVarying) {
  auto oracle = [](double x) {
    return simpson([x](double xi) { return std::cos(x * xi) * std::exp(-std::pow(xi, 4.0)); },
                   0.0, 8.0, 40000) / kPi;
  };
  const auto o = OrderParams::even(2);
  // Still positive at x = 3; the first negative lobe spans roughly (3.5, 6.7).
  EXPECT_GT(u_even(o, 3.0, 1.0), 0.0);
  EXPECT_LT(u_even(o, 4.5, 1.0), 0.0);
  for (double x : {3.0, 4.5, 6.0}) EXPECT_NEAR(u_even(o, x, 1.0), oracle(x), 1e-10);
}

TEST(UEven, SymmetricInX) {
  for (int n : {1, 2, 3}) {
    for (double x : {0.2, 1.7, 5.0}) {
      const auto o = OrderParams::even(n);
      EXPECT_EQ(u_even(o, x, 0.8), u_even(o, -x, 0.8));
    }
  }
}

TEST(UEven, UnitMass) {
  for (int n : {1, 2, 3}) {
    for (double t : {0.5, 1.0, 2.0}) {
      const auto o = OrderParams::even(n);
      const double mass = simpson([&](double x) { return u_even(o, x, t); }, -80.0, 80.0, 8000);
      EXPECT_NEAR(mass, 1.0, 1e-7) << "n=" << n << " t=" << t;
    }
  }
}

TEST(UEven, HeatEquationResidual) {
  const Tolerance tight{1e-14};
  const auto o = OrderParams::even(1);
  const double x = 0.3, t = 1.0, h = 1e-3;
  const double dt = (u_even(o, x, t + h, tight) - u_even(o, x, t - h, tight)) / (2.0 * h);
  const double dxx = (u_even(o, x + h, t, tight) - 2.0 * u_even(o, x, t, tight) +
                      u_even(o, x - h, t, tight)) / (h * h);
  EXPECT_NEAR(dt - dxx, 0.0, 1e-5);
}

TEST(UEven, TimeFloor) {
  EXPECT_THROW(u_even(OrderParams::even(1), 0.0, 1e-7), ConvergenceError);
  EXPECT_THROW(u_even(OrderParams::even(1), 0.0, -1.0), DomainError);
}

TEST(UEvenProbRep, AgreesWithDirectRoute) {
  for (int n : {1, 2}) {
    const auto o = OrderParams::even(n);
    for (double x : {-2.5, -0.4, 0.5, 1.0, 3.0}) {
      for (double t : {0.5, 1.0, 2.0}) {
        EXPECT_NEAR(u_even_prob_rep(o, x, t), u_even(o, x, t), 1e-7)
            << "n=" << n << " x=" << x << " t=" << t;
      }
    }
  }
}

TEST(UEvenProbRep, OddnessCancelsSign) {
  const auto o = OrderParams::even(2);
  EXPECT_NEAR(u_even_prob_rep(o, -1.3, 0.7), u_even_prob_rep(o, 1.3, 0.7), 1e-14);
  EXPECT_THROW(u_even_prob_rep(o, 0.0, 1.0), DomainError);
}

TEST(U3, AiryScaling) {
  EXPECT_NEAR(u3(0.0, 1.0 / 3.0), 0.35502805388781724, 1e-10);
  for (double t : {0.2, 1.0, 2.5}) {
    for (double x : {-6.0, -1.0, 0.5, 3.0}) {
      const double s = std::cbrt(3.0 * t);
      EXPECT_NEAR(u3(x, t), boost::math::airy_ai(x / s) / s, 1e-10);
    }
  }
  EXPECT_GT(u3(5.0, 1.0), 0.0);
  EXPECT_LT(u3(5.0, 1.0), 1e-2);
}

TEST(U3, UnitMass) {
  EXPECT_NEAR(windowed_mass([](double x) { return u3(x, 1.0); }), 1.0, 1e-6);
}

TEST(U3, TruncatedMassOnSymmetricWindow) {
  // The negative-axis tail decays only like |x|^(-3/4) with oscillation, so
  // the plain integral over [-30, 30] misses a visible part of the mass.
  const double s = std::cbrt(3.0);
  const double plain = simpson([](double x) { return u3(x, 1.0); }, -30.0, 30.0, 6000);
  const double oracle =
      simpson([s](double x) { return boost::math::airy_ai(x / s) / s; }, -30.0, 30.0, 6000);
  EXPECT_NEAR(plain, oracle, 1e-9);
  EXPECT_GT(std::abs(plain - 1.0), 1e-3);
}

TEST(U3, OscillatesOnNegativeAxis) {
  bool neg = false, pos = false;
  for (double x = -12.0; x < -5.0; x += 0.25) {
    (u3(x, 1.0) < 0.0 ? neg : pos) = true;
  }
  EXPECT_TRUE(neg);
  EXPECT_TRUE(pos);
}

TEST(UOddProbRep, ThirdOrderMatchesAiry) {
  const auto o = OrderParams::odd(1);
  for (double x : {-2.0, -1.0, -0.3, 0.4, 1.0, 2.5}) {
    for (double t : {0.5, 1.0}) {
      EXPECT_NEAR(u_odd_prob_rep(o, x, t), u3(x, t), 1e-6) << "x=" << x << " t=" << t;
    }
  }
  EXPECT_NE(u_odd_prob_rep(o, 1.0, 1.0), u_odd_prob_rep(o, -1.0, 1.0));
}

TEST(UOddProbRep, AgreesWithSteepestDescentRoute) {
  for (int n : {1, 2, 3}) {
    const auto o = OrderParams::odd(n);
    for (double x : {-1.5, -0.5, 0.7, 2.0}) {
      EXPECT_NEAR(u_odd_prob_rep(o, x, 1.0), u_odd(o, x, 1.0), 1e-8) << "n=" << n << " x=" << x;
    }
  }
}

TEST(UOddProbRep, CancellationGuard) {
  EXPECT_THROW(u_odd_prob_rep(OrderParams::odd(1), -40.0, 0.05, Tolerance{1e-12}),
               ConvergenceError);
  EXPECT_THROW(u_odd_prob_rep(OrderParams::odd(1), 0.0, 1.0), DomainError);
}

TEST(UOdd, AsymmetryDecreasesWithOrder) {
  double prev = std::numeric_limits<double>::infinity();
  for (int n : {1, 2, 3, 5, 10}) {
    const auto o = OrderParams::odd(n);
    const double gap = std::abs(u_odd(o, 0.7, 1.0) - u_odd(o, -0.7, 1.0));
    EXPECT_LT(gap, prev) << "n=" << n;
    prev = gap;
  }
}

TEST(UOdd, UnitMass) {
  for (int n : {1, 2}) {
    const auto o = OrderParams::odd(n);
    EXPECT_NEAR(windowed_mass([&](double x) { return u_odd(o, x, 1.0); }), 1.0, 1e-6) << "n=" << n;
  }
}

TEST(CauchySkewed, ValuesAndMass) {
  const auto o = OrderParams::odd(1);
  EXPECT_NEAR(cauchy_skewed_density(o, 0.0, 1.0), std::sqrt(3.0) / (2.0 * kPi), 1e-15);
  EXPECT_NEAR(cauchy_skewed_density(o, 0.0, 1.0), 0.27566444, 1e-8);
  const double t = 1.7;
  EXPECT_NEAR(cauchy_skewed_density(o, -t * o.b(), t), 1.0 / (kPi * t * o.a()), 1e-15);
  // x = t a tan(u) - t b maps the line onto (-pi/2, pi/2).
  const double mass = simpson(
      [&](double u) {
        const double c = std::cos(u);
        if (c <= 0.0) return 0.0;
        return cauchy_skewed_density(o, t * o.a() * std::tan(u) - t * o.b(), t) * t * o.a() / (c * c);
      },
      -kPi / 2.0, kPi / 2.0, 20000);
  EXPECT_NEAR(mass, 1.0, 1e-8);
}
