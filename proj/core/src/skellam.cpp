#include "sks/skellam.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "sks/special_functions.hpp"

namespace sks {
namespace {

void require_finite(double l1, double l2) {
  if (!std::isfinite(l1) || !std::isfinite(l2)) {
    throw std::domain_error("SkellamParams: rates must be finite");
  }
}

// log Po(lambda){k}; lambda > 0, k >= 0.
double log_poisson(double lambda, std::int64_t k) {
  const double kd = static_cast<double>(k);
  return -lambda + kd * std::log(lambda) - std::lgamma(kd + 1.0);
}

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Evaluates log pmf over a moving window, reusing one Bessel table for the
// whole range of orders. The table is rebuilt with a wider range on demand.
class LogPmfEvaluator {
 public:
  explicit LogPmfEvaluator(const SkellamParams& params) : params_(params) {
    if (!params.degenerate()) {
      x_ = 2.0 * std::sqrt(params.lambda1() * params.lambda2());
      const double d = std::sqrt(params.lambda1()) - std::sqrt(params.lambda2());
      log_prefactor_ = -d * d;
      half_log_ratio_ = 0.5 * (std::log(params.lambda1()) - std::log(params.lambda2()));
    }
  }

  double operator()(std::int64_t k) {
    const double l1 = params_.lambda1();
    const double l2 = params_.lambda2();
    if (l1 == 0.0 && l2 == 0.0) return k == 0 ? 0.0 : kNegInf;
    if (l2 == 0.0) return k < 0 ? kNegInf : log_poisson(l1, k);
    if (l1 == 0.0) return k > 0 ? kNegInf : log_poisson(l2, -k);
    const std::int64_t order = k < 0 ? -k : k;
    if (!table_ || !table_->covers(order)) rebuild(order);
    return log_prefactor_ + static_cast<double>(k) * half_log_ratio_ +
           table_->log_value(order).log_magnitude;
  }

 private:
  void rebuild(std::int64_t order) {
    const double sd = std::sqrt(params_.total());
    const auto span = static_cast<std::int64_t>(std::ceil(12.0 * sd + 40.0));
    const auto centre = static_cast<std::int64_t>(
        std::llround(std::abs(params_.lambda1() - params_.lambda2())));
    std::int64_t lo = std::max<std::int64_t>(0, std::min(order, centre - span));
    std::int64_t hi = std::max(order, centre + span);
    if (table_) {
      lo = std::min(lo, table_->lo());
      hi = std::max(hi, table_->hi());
    }
    hi = std::min(hi, kMaxBesselOrder);
    lo = std::min(lo, hi);
    table_.emplace(x_, lo, hi);
  }

  SkellamParams params_;
  double x_ = 0.0;
  double log_prefactor_ = 0.0;
  double half_log_ratio_ = 0.0;
  std::optional<ScaledBesselTable> table_;
};

}  // namespace

SkellamParams SkellamParams::strict(double lambda1, double lambda2) {
  require_finite(lambda1, lambda2);
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
    throw std::domain_error("SkellamParams: rates must be positive");
  }
  return SkellamParams(lambda1, lambda2);
}

SkellamParams SkellamParams::extended(double lambda1, double lambda2) {
  require_finite(lambda1, lambda2);
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) {
    throw std::domain_error("SkellamParams: rates must be nonnegative");
  }
  return SkellamParams(lambda1, lambda2);
}

double log_pmf(const SkellamParams& params, std::int64_t k) {
  return LogPmfEvaluator(params)(k);
}

double pmf(const SkellamParams& params, std::int64_t k) { return std::exp(log_pmf(params, k)); }

IntegerDist to_dist(const SkellamParams& params, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw std::domain_error("to_dist: tail_tol must lie in (0, 1)");
  }
  LogPmfEvaluator log_p(params);
  std::int64_t start = std::llround(params.lambda1() - params.lambda2());
  if (params.lambda2() == 0.0) start = std::max<std::int64_t>(start, 0);
  if (params.lambda1() == 0.0) start = std::min<std::int64_t>(start, 0);

  std::vector<double> left;  // start-1, start-2, ...
  std::vector<double> right{std::exp(log_p(start))};
  double captured = right.front();
  double next_left = std::exp(log_p(start - 1));
  double next_right = std::exp(log_p(start + 1));
  // The pmf is unimodal, so the larger frontier value is always the next
  // largest unclaimed probability.
  while (captured < 1.0 - tail_tol) {
    if (next_left == 0.0 && next_right == 0.0) break;
    if (next_right >= next_left) {
      right.push_back(next_right);
      captured += next_right;
      next_right = std::exp(log_p(start + static_cast<std::int64_t>(right.size())));
    } else {
      left.push_back(next_left);
      captured += next_left;
      next_left = std::exp(log_p(start - 1 - static_cast<std::int64_t>(left.size())));
    }
  }

  std::vector<double> probs(left.rbegin(), left.rend());
  probs.insert(probs.end(), right.begin(), right.end());
  const double tail = std::clamp(1.0 - captured, 0.0, tail_tol);
  return IntegerDist(start - static_cast<std::int64_t>(left.size()), std::move(probs), tail);
}

double cdf(const SkellamParams& params, std::int64_t k) {
  const IntegerDist d = to_dist(params, 1e-15);
  if (k < d.min_support()) return 0.0;
  double sum = 0.0;
  const std::int64_t hi = std::min(k, d.max_support());
  for (std::int64_t j = d.min_support(); j <= hi; ++j) sum += d(j);
  return k >= d.max_support() ? std::min(1.0, sum + d.tail_mass()) : sum;
}

Moments moments(const SkellamParams& params) {
  return {params.lambda1() - params.lambda2(), params.lambda1() + params.lambda2()};
}

std::vector<std::int64_t> sample(const SkellamParams& params, std::mt19937_64& rng,
                                 std::size_t count) {
  std::vector<std::int64_t> out;
  out.reserve(count);
  std::optional<std::poisson_distribution<std::int64_t>> pos;
  std::optional<std::poisson_distribution<std::int64_t>> neg;
  if (params.lambda1() > 0.0) pos.emplace(params.lambda1());
  if (params.lambda2() > 0.0) neg.emplace(params.lambda2());
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t x = pos ? (*pos)(rng) : 0;
    const std::int64_t y = neg ? (*neg)(rng) : 0;
    out.push_back(x - y);
  }
  return out;
}

double max_pmf_bound(const SkellamParams& params) {
  return bessel_i(0, params.total(), /*scaled=*/true);
}

}  // namespace sks
