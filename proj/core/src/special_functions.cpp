#include "sks/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sks {
namespace {

constexpr double kSeriesLimit = 30.0;
constexpr int kRescaleBits = 600;
const double kRescaleThreshold = std::ldexp(1.0, kRescaleBits);
const double kRescaleFactor = std::ldexp(1.0, -kRescaleBits);
constexpr double kLn2 = std::numbers::ln2;

// A positive number held as mantissa * 2^exponent so that long products of
// small factors cannot underflow.
struct WideReal {
  double mantissa = 1.0;
  std::int64_t exponent = 0;

  void multiply(double factor) {
    int e = 0;
    mantissa = std::frexp(mantissa * factor, &e);
    exponent += e;
  }
  double log() const { return std::log(mantissa) + static_cast<double>(exponent) * kLn2; }
};

void check_arguments(std::int64_t k, double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error("bessel_i: argument must be nonnegative");
  }
  if (k > kMaxBesselOrder || k < -kMaxBesselOrder) {
    throw std::domain_error("bessel_i: order exceeds " + std::to_string(kMaxBesselOrder));
  }
}

// sum_{m>=0} t_m with t_0 = 1, t_{m+1} = t_m q / ((m+1)(m+k+1)): the series
// of I_k(x) divided by its leading term, q = x^2 / 4. All terms are positive.
double series_ratio_sum(std::int64_t k, double q) {
  double term = 1.0;
  double sum = 1.0;
  const double kd = static_cast<double>(k);
  for (double m = 0.0;; m += 1.0) {
    const double denom = (m + 1.0) * (m + kd + 1.0);
    term *= q / denom;
    sum += term;
    if (denom > q && term < 1e-17 * sum) break;
  }
  return sum;
}

// log(e^{-x} I_n(x)) for n in [lo, hi] by the power series, x <= kSeriesLimit.
void series_table(double x, std::int64_t lo, std::int64_t hi, std::vector<double>& out) {
  const double half_x = 0.5 * x;
  const double q = half_x * half_x;
  WideReal lead;  // (x/2)^n / n!
  for (std::int64_t j = 1; j <= lo; ++j) lead.multiply(half_x / static_cast<double>(j));
  for (std::int64_t n = lo; n <= hi; ++n) {
    if (n > lo) lead.multiply(half_x / static_cast<double>(n));
    out[static_cast<std::size_t>(n - lo)] = lead.log() + std::log(series_ratio_sum(n, q)) - x;
  }
}

std::int64_t miller_start(std::int64_t hi, double x) {
  return hi + static_cast<std::int64_t>(std::ceil(std::sqrt(80.0 * x))) + 50;
}

// log(e^{-x} I_n(x)) for n in [lo, hi] by backward recurrence
//   I_{n-1} = (2n / x) I_n + I_{n+1},
// started far enough above hi that the arbitrary start has decayed below
// double precision, and normalized by e^{-x} (I_0 + 2 sum_{n>=1} I_n) = 1.
void miller_table(double x, std::int64_t lo, std::int64_t hi, std::vector<double>& out) {
  const std::int64_t start = miller_start(hi, x);
  const double two_over_x = 2.0 / x;
  std::vector<std::int64_t> rescales_at_store(out.size(), 0);
  std::int64_t rescales = 0;
  double next = 0.0;  // I_{n+1}
  double cur = 1.0;   // I_n
  double tail_sum = 0.0;
  for (std::int64_t n = start; n >= 1; --n) {
    tail_sum += cur;
    if (n >= lo && n <= hi) {
      out[static_cast<std::size_t>(n - lo)] = cur;
      rescales_at_store[static_cast<std::size_t>(n - lo)] = rescales;
    }
    const double prev = two_over_x * static_cast<double>(n) * cur + next;
    next = cur;
    cur = prev;
    if (cur > kRescaleThreshold) {
      cur *= kRescaleFactor;
      next *= kRescaleFactor;
      tail_sum *= kRescaleFactor;
      ++rescales;
    }
  }
  if (lo == 0) {
    out[0] = cur;
    rescales_at_store[0] = rescales;
  }
  const double log_norm = std::log(cur + 2.0 * tail_sum);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double shift = static_cast<double>(rescales - rescales_at_store[i]) *
                         static_cast<double>(kRescaleBits) * kLn2;
    out[i] = std::log(out[i]) - shift - log_norm;
  }
}

// e^{-x} I_k(x) directly in double precision, avoiding the log round trip
// where the result is a normal number.
double scaled_value_direct(std::int64_t k, double x) {
  if (x <= kSeriesLimit) {
    const double half_x = 0.5 * x;
    WideReal lead;
    for (std::int64_t j = 1; j <= k; ++j) lead.multiply(half_x / static_cast<double>(j));
    const double mant = lead.mantissa * series_ratio_sum(k, half_x * half_x) * std::exp(-x);
    return std::ldexp(mant, static_cast<int>(std::clamp<std::int64_t>(lead.exponent, -4000, 4000)));
  }
  std::vector<double> one(1);
  miller_table(x, k, k, one);
  return std::exp(one[0]);
}

}  // namespace

ScaledBesselTable::ScaledBesselTable(double x, std::int64_t lo, std::int64_t hi)
    : x_(x), lo_(lo), hi_(hi) {
  check_arguments(hi, x);
  if (lo < 0 || hi < lo) {
    throw std::domain_error("ScaledBesselTable: need 0 <= lo <= hi");
  }
  log_values_.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  if (x == 0.0) {
    for (std::int64_t n = lo; n <= hi; ++n) {
      log_values_[static_cast<std::size_t>(n - lo)] =
          n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
  } else if (x <= kSeriesLimit) {
    series_table(x, lo, hi, log_values_);
  } else {
    miller_table(x, lo, hi, log_values_);
  }
}

LogReal ScaledBesselTable::log_value(std::int64_t n) const {
  const std::int64_t m = n < 0 ? -n : n;
  if (!covers(m)) {
    throw std::out_of_range("ScaledBesselTable: order outside table");
  }
  return {log_values_[static_cast<std::size_t>(m - lo_)]};
}

LogReal log_bessel_i_scaled(std::int64_t k, double x) {
  const std::int64_t m = k < 0 ? -k : k;
  check_arguments(m, x);
  return ScaledBesselTable(x, m, m).log_value(m);
}

double bessel_i(std::int64_t k, double x, bool scaled) {
  const std::int64_t m = k < 0 ? -k : k;
  check_arguments(m, x);
  if (x == 0.0) return m == 0 ? 1.0 : 0.0;

  if (scaled) {
    const double direct = scaled_value_direct(m, x);
    if (direct >= std::numeric_limits<double>::min()) return direct;
    return log_bessel_i_scaled(m, x).value();
  }
  if (x <= kSeriesLimit) {
    const double half_x = 0.5 * x;
    WideReal lead;
    for (std::int64_t j = 1; j <= m; ++j) lead.multiply(half_x / static_cast<double>(j));
    const double mant = lead.mantissa * series_ratio_sum(m, half_x * half_x);
    return std::ldexp(mant, static_cast<int>(std::clamp<std::int64_t>(lead.exponent, -4000, 4000)));
  }
  const double log_unscaled = log_bessel_i_scaled(m, x).log_magnitude + x;
  if (log_unscaled > std::log(std::numeric_limits<double>::max())) {
    throw std::overflow_error("bessel_i: unscaled I_" + std::to_string(m) + "(" +
                              std::to_string(x) + ") overflows; use the scaled form");
  }
  return std::exp(log_unscaled);
}

IntegerDist poisson_dist(double lambda, double tail_tol) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("poisson_dist: lambda must be finite and nonnegative");
  }
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw std::domain_error("poisson_dist: tail_tol must lie in (0, 1)");
  }
  if (lambda == 0.0) return IntegerDist::point_mass(0);

  // Grow until the geometric tail bounds are negligible against the window
  // mass. Normalizing against window + bound keeps every entry within the
  // relative tolerance of its true value.
  const double rel = std::min(tail_tol, 1e-16);
  const std::int64_t mode = static_cast<std::int64_t>(std::floor(lambda));

  std::vector<double> right{1.0};  // u_mode, u_{mode+1}, ...
  double right_sum = 1.0;
  double right_bound = 0.0;
  for (std::int64_t k = mode;; ++k) {
    const double ratio = lambda / static_cast<double>(k + 1);
    const double nextu = right.back() * ratio;
    // For j > k, u_{j+1}/u_j <= ratio < 1, so the tail past k is at most
    // u_{k+1} / (1 - ratio).
    if (ratio < 1.0) {
      right_bound = nextu / (1.0 - ratio);
      if (right_bound <= rel * right_sum) break;
    }
    right.push_back(nextu);
    right_sum += nextu;
  }

  std::vector<double> left;  // u_{mode-1}, u_{mode-2}, ...
  double left_sum = 0.0;
  double left_bound = 0.0;
  double u = 1.0;
  for (std::int64_t k = mode; k > 0; --k) {
    const double ratio = static_cast<double>(k) / lambda;  // u_{k-1} / u_k
    const double prevu = u * ratio;
    // Ratios shrink further down, so the tail below k is at most u_{k-1} / (1 - ratio).
    left_bound = ratio < 1.0 ? prevu / (1.0 - ratio) : prevu * static_cast<double>(k);
    if (left_bound <= rel * (right_sum + left_sum)) break;
    left.push_back(prevu);
    left_sum += prevu;
    u = prevu;
    left_bound = 0.0;
  }

  const double norm = right_sum + left_sum + right_bound + left_bound;
  std::vector<double> probs;
  probs.reserve(left.size() + right.size());
  for (auto it = left.rbegin(); it != left.rend(); ++it) probs.push_back(*it / norm);
  for (double r : right) probs.push_back(r / norm);
  const double tail = (right_bound + left_bound) / norm;
  return IntegerDist(mode - static_cast<std::int64_t>(left.size()), std::move(probs), tail);
}

IntegerDist binomial_thin_dist(std::int64_t n, double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("binomial_thin_dist: q must lie in [0, 1]");
  }
  if (n < 0) {
    throw std::domain_error("binomial_thin_dist: n must be nonnegative");
  }
  if (n == 0 || q == 0.0) return IntegerDist::point_mass(0);
  if (q == 1.0) return IntegerDist::point_mass(n);

  const auto size = static_cast<std::size_t>(n + 1);
  std::vector<double> u(size, 0.0);
  const double odds = q / (1.0 - q);
  const auto mode = static_cast<std::size_t>(
      std::min<double>(static_cast<double>(n), std::floor(static_cast<double>(n + 1) * q)));
  u[mode] = 1.0;
  for (std::size_t k = mode; k < size - 1; ++k) {
    u[k + 1] = u[k] * odds * static_cast<double>(n - static_cast<std::int64_t>(k)) /
               static_cast<double>(k + 1);
  }
  for (std::size_t k = mode; k > 0; --k) {
    u[k - 1] = u[k] * static_cast<double>(k) /
               (odds * static_cast<double>(n - static_cast<std::int64_t>(k) + 1));
  }
  double total = 0.0;
  for (double v : u) total += v;
  for (double& v : u) v /= total;
  return IntegerDist(0, std::move(u), 0.0);
}

}  // namespace sks
