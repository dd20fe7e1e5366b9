#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sks/integer_dist.hpp"
#include "sks/skellam.hpp"
#include "sks/test_set.hpp"

namespace sks {

inline constexpr double kDefaultQuadTol = 1e-8;

struct BivariateState {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const BivariateState&, const BivariateState&) = default;
};

/// Real-valued function on states; only called on states with x, y >= 0.
using StateFunction = std::function<double(std::int64_t x, std::int64_t y)>;

/// The bivariate immigration-death generator
///   l1 [h(x+1,y) - h] + x [h(x-1,y) - h] + l2 [h(x,y+1) - h] + y [h(x,y-1) - h].
/// Neighbours with a zero coefficient are not evaluated.
double generator_apply(const StateFunction& h, const SkellamParams& params,
                       BivariateState state);

/// Law of the difference coordinate of the process started at `state` after
/// time t: Bin(x, e^{-t}) - Bin(y, e^{-t}) + Po(l1 (1 - e^{-t})) - Po(l2 (1 - e^{-t})).
IntegerDist intermediate_law(BivariateState state, const SkellamParams& params, double t,
                             double tail_tol);

struct SteinValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// h_f(x, y) = -int_0^inf [E f(Z_{x,y}(t)) - Sk{f}] dt.
SteinValue stein_solution(const SkellamParams& params, const TestSet& f, BivariateState state,
                          double quad_tol = kDefaultQuadTol);

/// Which finite difference of h a kernel represents.
enum class DifferenceType { d1, d2, d11, d12, d22 };
inline constexpr std::array<DifferenceType, 5> kAllDifferenceTypes = {
    DifferenceType::d1, DifferenceType::d2, DifferenceType::d11, DifferenceType::d12,
    DifferenceType::d22};

/// Maps (order, coords) to a difference type. `coords` holds one index for
/// order 1 and two for order 2, each in {1, 2}; (2, 1) is the same as (1, 2).
/// Throws std::invalid_argument otherwise.
DifferenceType difference_type(int order, const std::vector<int>& coords);
int order_of(DifferenceType type);
const char* to_string(DifferenceType type);

/// Signed kernel g with  Delta h_f(x, y) = -sum_k f(k) g(k)  for every
/// indicator f. `error_bound` bounds the l1 distance to the exact kernel
/// (quadrature estimate plus truncated mass).
struct DifferenceKernel {
  DifferenceType type = DifferenceType::d1;
  BivariateState state;
  std::int64_t min_support = 0;
  std::vector<double> values;
  double quad_tol = kDefaultQuadTol;
  double error_bound = 0.0;

  double operator()(std::int64_t k) const;
  double sum() const;
  double positive_mass() const;
  double negative_mass() const;
  /// -sum_k f(k) g(k).
  double apply(const TestSet& f) const;
  /// sup over indicator f of |sum f g| = max(positive mass, negative mass).
  double sup_over_indicators() const;
};

DifferenceKernel difference_kernel(const SkellamParams& params, int order,
                                   const std::vector<int>& coords, BivariateState state,
                                   double quad_tol = kDefaultQuadTol);

/// Per-state result of a kernel sweep, for all five difference types.
struct StateFactors {
  BivariateState state;
  std::array<double, 5> factor{};       // sup over indicators, per DifferenceType
  std::array<double, 5> kernel_sum{};   // should vanish
  std::array<double, 5> error_bound{};  // l1 error bound on the kernel
};

struct KernelSweepResult {
  std::vector<StateFactors> states;
  std::size_t intervals = 0;
  std::size_t passes = 0;
};

/// Computes all five difference kernels for every state in
/// [x_lo, x_hi] x [y_lo, y_hi] on one shared adaptive partition of the time
/// axis, so each state costs a couple of lattice sweeps per quadrature node.
KernelSweepResult sweep_difference_kernels(const SkellamParams& params, std::int64_t x_lo,
                                           std::int64_t x_hi, std::int64_t y_lo,
                                           std::int64_t y_hi, double quad_tol,
                                           std::vector<DifferenceKernel>* kernels = nullptr);

/// max(10, ceil(l1 + l2) + ceil(6 sqrt(l1 + l2))).
std::int64_t default_state_grid(const SkellamParams& params);

struct SteinFactor {
  double value = 0.0;
  double error_bound = 0.0;
  BivariateState argmax;
  std::int64_t grid_max = 0;

  double upper() const { return value + error_bound; }
};

/// sup over indicator f and states 0 <= x, y <= grid_max of |Delta h_f(x, y)|.
SteinFactor exact_stein_factor(const SkellamParams& params, int order,
                               const std::vector<int>& coords, std::int64_t grid_max,
                               double quad_tol = kDefaultQuadTol);

/// Reduces a sweep to the maximum over states with x, y <= grid_max.
SteinFactor max_factor(const KernelSweepResult& sweep, DifferenceType type,
                       std::int64_t grid_max);

// Closed-form Stein factor bounds.

/// min{1, sqrt(2 / (e max(l1, l2)))}.
double bound_first_diff(const SkellamParams& params);

/// min{1, 1 / (2 m^2) + sqrt(2) log+(sqrt(2) m) / m}, m = max(l1, l2).
double bound_second_diff(const SkellamParams& params);

enum class IntegralBoundForm {
  corrected,  ///< min{1, e^{-s} I_0(s)} inside the integral
  printed,    ///< max{1, ...}: identically 1
};

struct IntegralBound {
  double value = 0.0;
  double error_estimate = 0.0;
  double asymptote = 0.0;  ///< sqrt(2 / (pi (l1 + l2)))
};

/// int_0^inf e^{-t} min{1, e^{-s(t)} I_0(s(t))} dt with s(t) = (l1 + l2)(1 - e^{-t}).
IntegralBound bound_first_diff_integral(const SkellamParams& params,
                                        double quad_tol = kDefaultQuadTol,
                                        IntegralBoundForm form = IntegralBoundForm::corrected);

/// Bounds with max(l1, l2) replaced by l1 + l2. order must be 1 or 2.
double bound_relaxed(const SkellamParams& params, int order);

struct PriorComparison {
  double this_bound = 0.0;  ///< bound_second_diff(Sk(lambda, lambda))
  double prior = 0.0;       ///< 160 / (2 lambda)
};

PriorComparison prior_bound_comparison(double lambda);

struct SecondDiffSum {
  double sum = 0.0;
  double tail_bound = 0.0;  ///< 4 x tail mass of the tabulated window
  double reference = 0.0;   ///< 1 / (l1 + l2)
  double ratio = 0.0;       ///< sum / reference
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
};

/// sum_k |p_k - 2 p_{k-1} + p_{k-2}| for the Skellam pmf over a window with
/// tail mass <= tail_tol. Exploratory: reported, never asserted against.
SecondDiffSum skellam_second_diff_sum(const SkellamParams& params, double tail_tol = 1e-14);

}  // namespace sks
