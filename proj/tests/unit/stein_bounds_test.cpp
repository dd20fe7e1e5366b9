#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sks/stein.hpp"

namespace {

using namespace sks;

TEST(BoundFirstDiff, Examples) {
  EXPECT_NEAR(bound_first_diff(SkellamParams::strict(2, 1)), 0.606530659712633423603799534991,
              1e-15);
  EXPECT_EQ(bound_first_diff(SkellamParams::strict(0.1, 0.1)), 1.0);
  EXPECT_EQ(bound_first_diff(SkellamParams::strict(3, 7)), bound_first_diff(SkellamParams::strict(7, 3)));
}

TEST(BoundSecondDiff, Examples) {
  EXPECT_NEAR(bound_second_diff(SkellamParams::strict(4, 4)), 0.643911339667841994821188577272,
              1e-15);
  EXPECT_EQ(bound_second_diff(SkellamParams::strict(0.5, 0.5)), 1.0);
}

TEST(BoundSecondDiff, NonincreasingAboveTwo) {
  double prev = 2.0;
  for (double m = 2.0; m <= 1e5; m *= 1.07) {
    const double b = bound_second_diff(SkellamParams::strict(m, 0.5));
    EXPECT_LE(b, prev) << m;
    prev = b;
  }
}

TEST(BoundFirstDiffIntegral, Limits) {
  EXPECT_NEAR(bound_first_diff_integral(SkellamParams::strict(1e-8, 1e-8)).value, 1.0, 1e-6);
  const IntegralBound big = bound_first_diff_integral(SkellamParams::strict(250, 250));
  EXPECT_NEAR(big.value / big.asymptote, 1.0, 0.05);
  EXPECT_NEAR(big.asymptote, std::sqrt(2.0 / (std::numbers::pi * 500.0)), 1e-15);
  for (double l : {0.01, 0.3, 2.0, 40.0}) {
    EXPECT_LE(bound_first_diff_integral(SkellamParams::strict(l, 2 * l)).value, 1.0 + 1e-8);
  }
}

TEST(BoundFirstDiffIntegral, PrintedFormIsOne) {
  const auto p = SkellamParams::strict(3, 3);
  EXPECT_EQ(bound_first_diff_integral(p, 1e-8, IntegralBoundForm::printed).value, 1.0);
}

TEST(BoundFirstDiffIntegral, NeverAboveClosedForm) {
  for (double l1 : {0.2, 1.0, 5.0, 20.0, 80.0}) {
    for (double l2 : {0.2, 1.0, 5.0, 20.0}) {
      const auto p = SkellamParams::strict(l1, l2);
      EXPECT_LE(bound_first_diff_integral(p).value, bound_relaxed(p, 1) + 1e-8);
    }
  }
}

TEST(BoundRelaxed, Examples) {
  EXPECT_NEAR(bound_relaxed(SkellamParams::strict(1, 1), 1), 0.857763884960706796480189641279,
              1e-15);
  EXPECT_EQ(bound_relaxed(SkellamParams::strict(0.05, 0.05), 2), 1.0);
  EXPECT_THROW(bound_relaxed(SkellamParams::strict(1, 1), 3), std::invalid_argument);
}

TEST(BoundRelaxed, DominatesClosedFormBoundsOnScan) {
  for (double l1 = 0.05; l1 < 500; l1 *= 1.6) {
    for (double l2 = 0.05; l2 < 500; l2 *= 1.6) {
      const auto p = SkellamParams::strict(l1, l2);
      EXPECT_GE(bound_relaxed(p, 1), bound_first_diff(p));
      EXPECT_GE(bound_relaxed(p, 2), bound_second_diff(p));
    }
  }
}

TEST(PriorBoundComparison, Examples) {
  const PriorComparison a = prior_bound_comparison(4.0);
  EXPECT_EQ(a.prior, 20.0);
  EXPECT_NEAR(a.this_bound, 0.6439113396678420, 1e-15);
  EXPECT_EQ(prior_bound_comparison(80.0).prior, 1.0);
  const PriorComparison big = prior_bound_comparison(1e6);
  EXPECT_EQ(big.this_bound, bound_second_diff(SkellamParams::strict(1e6, 1e6)));
  EXPECT_EQ(big.prior, 8e-5);
  // 80 / lambda against sqrt(2) log(sqrt(2) lambda) / lambda: the log term
  // overtakes the constant only once log(sqrt(2) lambda) > 40 sqrt(2).
  const PriorComparison huge = prior_bound_comparison(1e30);
  EXPECT_LT(huge.prior, huge.this_bound);
  EXPECT_THROW(prior_bound_comparison(0.0), std::domain_error);
}

TEST(SkellamSecondDiffSum, Properties) {
  const SecondDiffSum one = skellam_second_diff_sum(SkellamParams::strict(1, 1));
  EXPECT_LE(one.sum, 2.0);
  EXPECT_LE(one.tail_bound, 4e-14);
  const SecondDiffSum five = skellam_second_diff_sum(SkellamParams::strict(5, 5));
  EXPECT_DOUBLE_EQ(five.reference, 0.1);
  EXPECT_DOUBLE_EQ(five.ratio, five.sum / 0.1);
  RecordProperty("sk55_ratio", std::to_string(five.ratio));
}

TEST(SkellamSecondDiffSum, ReflectedWindowAgrees) {
  // For equal rates p_k = p_{-k}, so |p_k - 2p_{k-1} + p_{k-2}| pairs with
  // the term at -k + 2; summing in reverse order must give the same value.
  const auto p = SkellamParams::strict(3, 3);
  const SecondDiffSum s = skellam_second_diff_sum(p);
  const IntegerDist d = to_dist(p, 1e-14);
  double reflected = 0.0;
  for (std::int64_t k = s.window_lo; k <= s.window_hi; ++k) {
    const std::int64_t j = -k + 2;
    reflected += std::abs(d(j) - 2.0 * d(j - 1) + d(j - 2));
  }
  EXPECT_NEAR(reflected, s.sum, 1e-15);
}

}  // namespace
