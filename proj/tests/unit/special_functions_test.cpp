#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "sks/special_functions.hpp"
#include "sks/tv_metrics.hpp"

namespace {

using namespace sks;

double rel_err(double got, long double want) {
  return static_cast<double>(std::abs((static_cast<long double>(got) - want) / want));
}

TEST(BesselI, SmallArgumentValues) {
  EXPECT_EQ(bessel_i(0, 0.0), 1.0);
  EXPECT_EQ(bessel_i(1, 0.0), 0.0);
  EXPECT_EQ(bessel_i(7, 0.0, true), 0.0);
  EXPECT_NEAR(bessel_i(0, 2.0), 2.27958530233606726743720444081, 1e-14);
  EXPECT_NEAR(bessel_i(0, 2.0, true), 0.308508322553671039533384319267, 1e-15);
}

TEST(BesselI, NegativeOrderIsSymmetric) {
  for (double x : {0.3, 5.0, 45.0, 700.0}) {
    for (int k : {1, 2, 9, 40}) {
      EXPECT_EQ(bessel_i(-k, x, true), bessel_i(k, x, true)) << k << " " << x;
    }
  }
}

TEST(BesselI, MatchesLongDoubleSeries) {
  const double xs[] = {1e-6, 0.01, 0.5, 1.0, 3.7, 10.0, 29.9, 30.0, 30.1, 31.0, 50.0,
                       99.5, 250.0, 1000.0, 4321.0, 10000.0};
  const int ks[] = {0, 1, 2, 5, 17, 60, 200};
  double worst = 0.0;
  for (double x : xs) {
    for (int k : ks) {
      const long double want = oracle::bessel_series(k, x) * std::exp(-static_cast<long double>(x));
      if (want < 1e-290L) continue;
      const double e = rel_err(bessel_i(k, x, true), want);
      worst = std::max(worst, e);
      EXPECT_LE(e, 1e-12) << "k=" << k << " x=" << x;
    }
  }
  RecordProperty("worst_relative_error", std::to_string(worst));
}

TEST(BesselI, ScaledAgreesWithUnscaled) {
  for (double x : {0.2, 4.0, 29.0, 31.0, 120.0, 600.0}) {
    for (int k : {0, 3, 11, 30}) {
      const double u = bessel_i(k, x);
      if (!std::isfinite(u) || u == 0.0) continue;
      EXPECT_NEAR(bessel_i(k, x, true), std::exp(-x) * u, 1e-12 * std::exp(-x) * u);
    }
  }
}

TEST(BesselI, LargeOrderUnderflowIsHandledInLogSpace) {
  // (x/2)^k / k! far below the double range: the log form must stay finite.
  const LogReal l = log_bessel_i_scaled(400, 1.0);
  EXPECT_TRUE(std::isfinite(l.log_magnitude));
  const long double series_log =
      std::log(oracle::bessel_series(400, 1.0L)) - 1.0L;  // exp(-1) scaling
  EXPECT_NEAR(l.log_magnitude, static_cast<double>(series_log), 1e-10);
}

TEST(BesselI, Errors) {
  EXPECT_THROW(bessel_i(0, -1.0), std::domain_error);
  EXPECT_THROW(bessel_i(kMaxBesselOrder + 1, 1.0), std::domain_error);
  EXPECT_THROW(bessel_i(0, 1000.0), std::overflow_error);
  EXPECT_NO_THROW(bessel_i(0, 1000.0, true));
}

TEST(ScaledBesselTable, AgreesWithPointEvaluation) {
  for (double x : {0.7, 12.0, 64.0, 900.0}) {
    const ScaledBesselTable t(x, 0, 80);
    for (int n = 0; n <= 80; n += 7) {
      const double a = t.log_value(n).log_magnitude;
      const double b = log_bessel_i_scaled(n, x).log_magnitude;
      EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(b))) << x << " " << n;
    }
  }
}

TEST(PoissonDist, Examples) {
  EXPECT_EQ(poisson_dist(0.0, 1e-12), IntegerDist::point_mass(0));
  const IntegerDist d = poisson_dist(1.0, 1e-12);
  EXPECT_NEAR(d(0), std::exp(-1.0), 1e-15);
  const IntegerDist e = poisson_dist(7.3, 1e-10);
  EXPECT_GE(e.window_mass(), 1.0 - 1e-10);
  EXPECT_LE(e.tail_mass(), 1e-10);
  EXPECT_THROW(poisson_dist(-1.0, 1e-10), std::domain_error);
}

TEST(PoissonDist, MatchesLgammaOracle) {
  for (double lambda : {0.01, 0.5, 3.0, 42.0, 1000.0, 250000.0}) {
    const IntegerDist d = poisson_dist(lambda, 1e-13);
    EXPECT_LE(d.tail_mass(), 1e-13);
    EXPECT_NEAR(d.window_mass() + d.tail_mass(), 1.0, 1e-12);
    for (std::int64_t k = d.min_support(); k <= d.max_support();
         k += std::max<std::int64_t>(1, static_cast<std::int64_t>(d.size() / 50))) {
      const long double want = oracle::poisson_pmf(lambda, k);
      EXPECT_NEAR(d(k), static_cast<double>(want), 1e-12 * static_cast<double>(want) + 1e-300)
          << lambda << " " << k;
    }
  }
}

TEST(PoissonDist, MaxPmfBound) {
  for (double lambda : {0.5, 1.0, 5.0, 20.0, 100.0}) {
    const IntegerDist d = poisson_dist(lambda, 1e-15);
    double mx = 0.0;
    for (double p : d.probabilities()) mx = std::max(mx, p);
    EXPECT_LE(mx, (1.0 + 1e-12) / std::sqrt(2.0 * std::numbers::e * lambda)) << lambda;
  }
}

TEST(PoissonDist, SecondDifferenceBound) {
  for (double lambda : {1.0, 2.0, 5.0, 20.0, 100.0}) {
    const IntegerDist d = poisson_dist(lambda, 1e-16);
    double s = 0.0;
    for (std::int64_t k = d.min_support(); k <= d.max_support() + 2; ++k) {
      s += std::abs(d(k) - 2.0 * d(k - 1) + d(k - 2));
    }
    EXPECT_LE(s, std::numbers::sqrt2 / lambda) << lambda;
  }
}

TEST(PoissonDist, SelfConvolutionAtZeroIsScaledBessel) {
  // P(X - Y = 0) for iid Po(lambda) is e^{-2 lambda} I_0(2 lambda).
  for (double lambda : {0.2, 1.0, 7.5, 30.0}) {
    const IntegerDist d = poisson_dist(lambda, 1e-15);
    double s = 0.0;
    for (double p : d.probabilities()) s += p * p;
    EXPECT_NEAR(s, bessel_i(0, 2.0 * lambda, true), 1e-10) << lambda;
  }
}

TEST(BinomialThinDist, Examples) {
  EXPECT_EQ(binomial_thin_dist(0, 0.5), IntegerDist::point_mass(0));
  EXPECT_EQ(binomial_thin_dist(3, 1.0), IntegerDist::point_mass(3));
  const IntegerDist d = binomial_thin_dist(2, 0.25);
  EXPECT_NEAR(d(0), 0.5625, 1e-15);
  EXPECT_NEAR(d(1), 0.375, 1e-15);
  EXPECT_NEAR(d(2), 0.0625, 1e-15);
  EXPECT_THROW(binomial_thin_dist(4, 1.5), std::domain_error);
  EXPECT_THROW(binomial_thin_dist(4, -0.1), std::domain_error);
}

TEST(BinomialThinDist, MatchesLgammaOracle) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = std::uniform_int_distribution<std::int64_t>(0, 400)(rng);
    const double q = oracle::uniform(rng, 0.0, 1.0);
    const IntegerDist d = binomial_thin_dist(n, q);
    for (std::int64_t k = 0; k <= n; ++k) {
      const long double want = oracle::binomial_pmf(n, q, k);
      EXPECT_NEAR(d(k), static_cast<double>(want), 1e-12 * static_cast<double>(want) + 1e-300);
    }
  }
}

}  // namespace
