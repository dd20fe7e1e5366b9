#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "sks/integer_dist.hpp"

namespace sks {

/// Parameters of Sk(lambda1, lambda2), the law of X - Y for independent
/// X ~ Po(lambda1), Y ~ Po(lambda2).
///
/// strict() requires both rates positive. extended() also admits zero rates,
/// in which case the law degrades to Po(lambda1), -Po(lambda2) or a point
/// mass at zero.
class SkellamParams {
 public:
  static SkellamParams strict(double lambda1, double lambda2);
  static SkellamParams extended(double lambda1, double lambda2);

  double lambda1() const { return lambda1_; }
  double lambda2() const { return lambda2_; }
  double total() const { return lambda1_ + lambda2_; }
  double max_rate() const { return lambda1_ > lambda2_ ? lambda1_ : lambda2_; }

  /// True when either rate is zero (only possible via extended()).
  bool degenerate() const { return lambda1_ == 0.0 || lambda2_ == 0.0; }

  SkellamParams swapped() const { return SkellamParams(lambda2_, lambda1_); }

  friend bool operator==(const SkellamParams&, const SkellamParams&) = default;

 private:
  SkellamParams(double lambda1, double lambda2) : lambda1_(lambda1), lambda2_(lambda2) {}

  double lambda1_;
  double lambda2_;
};

struct Moments {
  double mean;
  double variance;
};

/// Sk(lambda1, lambda2){k} = e^{-(l1+l2)} (l1/l2)^{k/2} I_k(2 sqrt(l1 l2)),
/// evaluated in log space with one final exponentiation.
double pmf(const SkellamParams& params, std::int64_t k);
double log_pmf(const SkellamParams& params, std::int64_t k);

/// P(W <= k), summed over a window with captured mass >= 1 - 1e-15.
double cdf(const SkellamParams& params, std::int64_t k);

/// Window grown outward from round(l1 - l2) until captured mass >= 1 - tail_tol.
IntegerDist to_dist(const SkellamParams& params, double tail_tol);

Moments moments(const SkellamParams& params);

/// Draws X - Y with X ~ Po(l1), Y ~ Po(l2) from the caller's generator.
std::vector<std::int64_t> sample(const SkellamParams& params, std::mt19937_64& rng,
                                 std::size_t count);

/// e^{-(l1+l2)} I_0(l1 + l2): a uniform bound on Sk(l1, l2){k}.
double max_pmf_bound(const SkellamParams& params);

}  // namespace sks
