#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "sks/integer_dist.hpp"

namespace sks {

/// A nonnegative quantity stored as its natural log; -inf encodes zero.
struct LogReal {
  double log_magnitude = -std::numeric_limits<double>::infinity();

  static LogReal zero() { return {}; }
  static LogReal from_value(double v) { return {std::log(v)}; }

  double value() const { return std::exp(log_magnitude); }
  bool is_zero() const { return std::isinf(log_magnitude) && log_magnitude < 0; }
};

inline constexpr std::int64_t kMaxBesselOrder = 1'000'000;

/// Modified Bessel function of the first kind I_k(x), or e^{-x} I_k(x) when
/// `scaled` is set. Negative orders use I_{-k} = I_k.
///
/// Power series for x <= 30, Miller backward recurrence normalized by
/// e^{-x}(I_0 + 2 sum_{n>=1} I_n) = 1 above that.
///
/// Throws std::domain_error for x < 0 or |k| > kMaxBesselOrder, and
/// std::overflow_error when the unscaled value is not representable.
double bessel_i(std::int64_t k, double x, bool scaled = false);

/// log(e^{-x} I_k(x)) without intermediate underflow.
LogReal log_bessel_i_scaled(std::int64_t k, double x);

/// log(e^{-x} I_n(x)) for every n in [lo, hi] from a single recurrence pass.
class ScaledBesselTable {
 public:
  ScaledBesselTable(double x, std::int64_t lo, std::int64_t hi);

  double x() const { return x_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  bool covers(std::int64_t n) const { return n >= lo_ && n <= hi_; }

  /// Requires covers(|n|).
  LogReal log_value(std::int64_t n) const;

 private:
  double x_;
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<double> log_values_;
};

/// Po(lambda) on a window around the mode, built by the ratio recurrence
/// p_{k+1} / p_k = lambda / (k + 1) outward from the mode and normalized
/// against a geometric bound on both tails. Recorded tail mass <= tail_tol.
IntegerDist poisson_dist(double lambda, double tail_tol);

/// Exact Bin(n, q) on {0, ..., n}.
IntegerDist binomial_thin_dist(std::int64_t n, double q);

}  // namespace sks
