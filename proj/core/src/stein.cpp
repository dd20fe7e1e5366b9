#include "sks/stein.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sks/quadrature.hpp"
#include "sks/special_functions.hpp"
#include "sks/tv_metrics.hpp"

namespace sks {

double generator_apply(const StateFunction& h, const SkellamParams& params,
                       BivariateState state) {
  if (state.x < 0 || state.y < 0) {
    throw std::domain_error("generator_apply: state must be nonnegative");
  }
  const double centre = h(state.x, state.y);
  double out = 0.0;
  if (params.lambda1() != 0.0) out += params.lambda1() * (h(state.x + 1, state.y) - centre);
  if (state.x != 0) out += static_cast<double>(state.x) * (h(state.x - 1, state.y) - centre);
  if (params.lambda2() != 0.0) out += params.lambda2() * (h(state.x, state.y + 1) - centre);
  if (state.y != 0) out += static_cast<double>(state.y) * (h(state.x, state.y - 1) - centre);
  return out;
}

IntegerDist intermediate_law(BivariateState state, const SkellamParams& params, double t,
                             double tail_tol) {
  if (!(t > 0.0)) {
    throw std::domain_error("intermediate_law: t must be positive");
  }
  if (state.x < 0 || state.y < 0) {
    throw std::domain_error("intermediate_law: state must be nonnegative");
  }
  const double survive = std::exp(-t);
  const double arrived = -std::expm1(-t);
  const IntegerDist deaths = convolve(binomial_thin_dist(state.x, survive),
                                      negate(binomial_thin_dist(state.y, survive)));
  const IntegerDist immigrants =
      convolve(poisson_dist(params.lambda1() * arrived, 0.5 * tail_tol),
               negate(poisson_dist(params.lambda2() * arrived, 0.5 * tail_tol)));
  return convolve(deaths, immigrants);
}

SteinValue stein_solution(const SkellamParams& params, const TestSet& f, BivariateState state,
                          double quad_tol) {
  if (!(quad_tol > 0.0)) {
    throw std::domain_error("stein_solution: quad_tol must be positive");
  }
  if (f.kind() == TestSet::Kind::everything) return {0.0, 0.0};
  const double target = f.measure(to_dist(params, std::min(1e-15, 1e-4 * quad_tol)));
  // Neglected mass at time t is at most quad_tol e^{-t} / 100, which
  // integrates to quad_tol / 100.
  const auto integrand = [&](double t) {
    const double tail = std::max(1e-300, 0.01 * quad_tol * std::exp(-t));
    return f.measure(intermediate_law(state, params, t, std::min(tail, 0.5))) - target;
  };
  const QuadratureResult q = integrate_halfline(integrand, quad_tol);
  return {-q.value, q.error_estimate + 0.01 * quad_tol};
}

DifferenceType difference_type(int order, const std::vector<int>& coords) {
  const auto valid = [](int c) { return c == 1 || c == 2; };
  if (order == 1 && coords.size() == 1 && valid(coords[0])) {
    return coords[0] == 1 ? DifferenceType::d1 : DifferenceType::d2;
  }
  if (order == 2 && coords.size() == 2 && valid(coords[0]) && valid(coords[1])) {
    if (coords[0] != coords[1]) return DifferenceType::d12;
    return coords[0] == 1 ? DifferenceType::d11 : DifferenceType::d22;
  }
  throw std::invalid_argument("difference_type: order must be 1 or 2 with matching coordinates in {1,2}");
}

int order_of(DifferenceType type) {
  return type == DifferenceType::d1 || type == DifferenceType::d2 ? 1 : 2;
}

const char* to_string(DifferenceType type) {
  switch (type) {
    case DifferenceType::d1:
      return "d1";
    case DifferenceType::d2:
      return "d2";
    case DifferenceType::d11:
      return "d11";
    case DifferenceType::d12:
      return "d12";
    case DifferenceType::d22:
      return "d22";
  }
  return "?";
}

double DifferenceKernel::operator()(std::int64_t k) const {
  const std::int64_t i = k - min_support;
  if (i < 0 || i >= static_cast<std::int64_t>(values.size())) return 0.0;
  return values[static_cast<std::size_t>(i)];
}

double DifferenceKernel::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double DifferenceKernel::positive_mass() const {
  double s = 0.0;
  for (double v : values) s += v > 0.0 ? v : 0.0;
  return s;
}

double DifferenceKernel::negative_mass() const {
  double s = 0.0;
  for (double v : values) s += v < 0.0 ? -v : 0.0;
  return s;
}

double DifferenceKernel::apply(const TestSet& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (f.contains(min_support + static_cast<std::int64_t>(i))) s += values[i];
  }
  return -s;
}

double DifferenceKernel::sup_over_indicators() const {
  return std::max(positive_mass(), negative_mass());
}

DifferenceKernel difference_kernel(const SkellamParams& params, int order,
                                   const std::vector<int>& coords, BivariateState state,
                                   double quad_tol) {
  const DifferenceType type = difference_type(order, coords);
  std::vector<DifferenceKernel> kernels;
  sweep_difference_kernels(params, state.x, state.x, state.y, state.y, quad_tol, &kernels);
  for (auto& k : kernels) {
    if (k.type == type) return std::move(k);
  }
  throw std::logic_error("difference_kernel: sweep did not produce the requested kernel");
}

std::int64_t default_state_grid(const SkellamParams& params) {
  const double s = params.total();
  const auto grid =
      static_cast<std::int64_t>(std::ceil(s) + std::ceil(6.0 * std::sqrt(s)));
  return std::max<std::int64_t>(10, grid);
}

SteinFactor max_factor(const KernelSweepResult& sweep, DifferenceType type,
                       std::int64_t grid_max) {
  const auto idx = static_cast<std::size_t>(type);
  SteinFactor best;
  best.grid_max = grid_max;
  bool any = false;
  for (const StateFactors& s : sweep.states) {
    if (s.state.x > grid_max || s.state.y > grid_max) continue;
    if (!any || s.factor[idx] > best.value) {
      best.value = s.factor[idx];
      best.argmax = s.state;
      any = true;
    }
    best.error_bound = std::max(best.error_bound, s.error_bound[idx]);
  }
  if (!any) {
    throw std::invalid_argument("max_factor: no states within the requested grid");
  }
  return best;
}

SteinFactor exact_stein_factor(const SkellamParams& params, int order,
                               const std::vector<int>& coords, std::int64_t grid_max,
                               double quad_tol) {
  if (grid_max < 0) {
    throw std::domain_error("exact_stein_factor: grid_max must be nonnegative");
  }
  const DifferenceType type = difference_type(order, coords);
  const KernelSweepResult sweep =
      sweep_difference_kernels(params, 0, grid_max, 0, grid_max, quad_tol);
  return max_factor(sweep, type, grid_max);
}

}  // namespace sks
