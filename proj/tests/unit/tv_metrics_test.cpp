#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "sks/errors.hpp"
#include "sks/skellam.hpp"
#include "sks/tv_metrics.hpp"

namespace {

using namespace sks;

IntegerDist random_dist(std::mt19937_64& rng) {
  const auto lo = std::uniform_int_distribution<std::int64_t>(-5, 5)(rng);
  const auto n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) s += (x = oracle::uniform(rng, 0.0, 1.0));
  for (double& x : p) x /= s;
  return IntegerDist(lo, p);
}

TEST(TvDistance, Basics) {
  const IntegerDist a = IntegerDist::point_mass(0);
  const IntegerDist b = IntegerDist::point_mass(3);
  EXPECT_EQ(tv_distance(a, a).value, 0.0);
  EXPECT_EQ(tv_distance(a, b).value, 1.0);
  const IntegerDist c(0, {0.5, 0.5});
  EXPECT_DOUBLE_EQ(tv_distance(a, c).value, 0.5);
}

TEST(TvDistance, SlackCoversTails) {
  const IntegerDist a(0, {0.6, 0.4 - 1e-6}, 1e-6);
  const IntegerDist b(0, {0.6, 0.4});
  const TvInterval tv = tv_distance(a, b);
  EXPECT_NEAR(tv.slack, 0.5e-6, 1e-18);
  EXPECT_LE(tv.lower(), tv.value);
  EXPECT_GE(tv.upper(), tv.value);
}

TEST(TvDistance, SymmetryAndTriangleOnRandomTriples) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 300; ++i) {
    const IntegerDist a = random_dist(rng), b = random_dist(rng), c = random_dist(rng);
    EXPECT_EQ(tv_distance(a, b).value, tv_distance(b, a).value);
    EXPECT_LE(tv_distance(a, c).value,
              tv_distance(a, b).value + tv_distance(b, c).value + 2e-15);
  }
}

TEST(Convolve, CommutativeAndAssociative) {
  std::mt19937_64 rng(18);
  for (int i = 0; i < 200; ++i) {
    const IntegerDist a = random_dist(rng), b = random_dist(rng), c = random_dist(rng);
    const IntegerDist ab = convolve(a, b), ba = convolve(b, a);
    const IntegerDist l = convolve(ab, c), r = convolve(a, convolve(b, c));
    for (std::int64_t k = ab.min_support(); k <= ab.max_support(); ++k) {
      EXPECT_NEAR(ab(k), ba(k), 1e-12);
    }
    for (std::int64_t k = l.min_support() - 1; k <= l.max_support() + 1; ++k) {
      EXPECT_NEAR(l(k), r(k), 1e-12);
    }
  }
}

TEST(Convolve, TailsAddAndPointMassesShift) {
  const IntegerDist a(0, {0.5, 0.5 - 1e-8}, 1e-8);
  const IntegerDist b(2, {1.0 - 2e-8}, 2e-8);
  const IntegerDist c = convolve(a, b);
  EXPECT_NEAR(c.tail_mass(), 3e-8, 1e-15);
  EXPECT_EQ(convolve(IntegerDist::point_mass(2), IntegerDist::point_mass(-5)),
            IntegerDist::point_mass(-3));
}

TEST(Convolve, SkellamFromPoissonTables) {
  // Po(2) * -Po(3) is Sk(2, 3).
  const IntegerDist x = to_dist(SkellamParams::extended(2.0, 0.0), 1e-15);
  const IntegerDist y = to_dist(SkellamParams::extended(0.0, 3.0), 1e-15);
  const IntegerDist d = convolve(x, y);
  for (std::int64_t k = -10; k <= 8; ++k) {
    EXPECT_NEAR(d(k), pmf(SkellamParams::strict(2.0, 3.0), k), 1e-14);
  }
}

TEST(Negate, Examples) {
  EXPECT_EQ(negate(IntegerDist::point_mass(3)), IntegerDist::point_mass(-3));
  std::mt19937_64 rng(3);
  const IntegerDist a = random_dist(rng);
  EXPECT_EQ(negate(negate(a)), a);
  const IntegerDist s = to_dist(SkellamParams::strict(4.0, 1.5), 1e-12);
  const IntegerDist n = negate(s);
  for (std::int64_t k = n.min_support(); k <= n.max_support(); ++k) {
    EXPECT_NEAR(n(k), pmf(SkellamParams::strict(1.5, 4.0), k), 1e-12);
  }
}

TEST(EmpiricalDist, Examples) {
  const std::vector<std::int64_t> one{0};
  EXPECT_EQ(empirical_dist(one), IntegerDist::point_mass(0));
  const std::vector<std::int64_t> v{0, 0, 1, 1};
  const IntegerDist d = empirical_dist(v);
  EXPECT_EQ(d(0), 0.5);
  EXPECT_EQ(d(1), 0.5);
  EXPECT_EQ(d.tail_mass(), 0.0);
  EXPECT_THROW(empirical_dist(std::vector<std::int64_t>{}), std::invalid_argument);
}

TEST(EmpiricalDist, SkellamSamplesConcentrate) {
  std::mt19937_64 rng(2024);
  const auto p = SkellamParams::strict(1.0, 1.0);
  const auto s = sample(p, rng, 100000);
  const double tv = tv_distance(empirical_dist(s), to_dist(p, 1e-14)).value;
  EXPECT_LE(tv, 3.0 * std::sqrt(std::log(2.0 / 0.001) / (2.0 * 1e5)));
}

}  // namespace
