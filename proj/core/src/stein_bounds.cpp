#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sks/quadrature.hpp"
#include "sks/special_functions.hpp"
#include "sks/stein.hpp"

namespace sks {
namespace {

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

double first_diff_form(double m) {
  if (m <= 0.0) return 1.0;
  return std::min(1.0, std::sqrt(2.0 / (std::numbers::e * m)));
}

double second_diff_form(double m) {
  if (m <= 0.0) return 1.0;
  const double r = std::numbers::sqrt2;
  return std::min(1.0, 1.0 / (2.0 * m * m) + r * log_plus(r * m) / m);
}

}  // namespace

double bound_first_diff(const SkellamParams& params) { return first_diff_form(params.max_rate()); }

double bound_second_diff(const SkellamParams& params) {
  return second_diff_form(params.max_rate());
}

IntegralBound bound_first_diff_integral(const SkellamParams& params, double quad_tol,
                                        IntegralBoundForm form) {
  if (!(quad_tol > 0.0)) throw std::domain_error("bound_first_diff_integral: quad_tol must be positive");
  const double total = params.total();
  IntegralBound out;
  out.asymptote = total > 0.0 ? std::sqrt(2.0 / (std::numbers::pi * total))
                              : std::numeric_limits<double>::infinity();
  if (form == IntegralBoundForm::printed) {
    // max{1, e^{-s} I_0(s)} is 1 since e^{-s} I_0(s) <= 1.
    out.value = 1.0;
    return out;
  }
  // With u = e^{-t}: int_0^1 min{1, e^{-s} I_0(s)} du, s = total (1 - u).
  const auto integrand = [total](double u) {
    return std::min(1.0, bessel_i(0, total * (1.0 - u), true));
  };
  const QuadratureResult r = integrate_adaptive(integrand, 0.0, 1.0, quad_tol);
  out.value = r.value;
  out.error_estimate = r.error_estimate;
  return out;
}

double bound_relaxed(const SkellamParams& params, int order) {
  const double s = params.total();
  if (order == 1) {
    if (s <= 0.0) return 1.0;
    return std::min(1.0, std::sqrt(4.0 / (std::numbers::e * s)));
  }
  if (order == 2) {
    if (s <= 0.0) return 1.0;
    const double r = std::numbers::sqrt2;
    return std::min(1.0, 2.0 / (s * s) + 2.0 * r * log_plus(r * s) / s);
  }
  throw std::invalid_argument("bound_relaxed: order must be 1 or 2");
}

PriorComparison prior_bound_comparison(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("prior_bound_comparison: lambda must be positive and finite");
  }
  return {second_diff_form(lambda), 80.0 / lambda};
}

SecondDiffSum skellam_second_diff_sum(const SkellamParams& params, double tail_tol) {
  if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
    throw std::domain_error("skellam_second_diff_sum: tail_tol must lie in (0, 1)");
  }
  const IntegerDist d = to_dist(params, tail_tol);
  SecondDiffSum out;
  out.window_lo = d.min_support();
  out.window_hi = d.max_support() + 2;
  // Pad with zeros on both sides so every second difference touching the
  // window is counted.
  double sum = 0.0;
  for (std::int64_t k = d.min_support(); k <= d.max_support() + 2; ++k) {
    sum += std::abs(d(k) - 2.0 * d(k - 1) + d(k - 2));
  }
  out.sum = sum;
  out.tail_bound = 4.0 * d.tail_mass();
  const double total = params.total();
  out.reference = total > 0.0 ? 1.0 / total : std::numeric_limits<double>::infinity();
  out.ratio = sum / out.reference;
  return out;
}

}  // namespace sks
