#include "sks/quadrature.hpp"

#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "sks/errors.hpp"

namespace sks {
namespace {

struct Segment {
  double a;
  double b;
  double value;
  double error;
  int depth;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b, int depth) {
  using R = GaussKronrod15;
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double kronrod = fc * R::kronrod_weights[7];
  double gauss = fc * R::gauss_weights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * R::abscissae[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += R::kronrod_weights[j] * pair;
    if (j % 2 == 1) gauss += R::gauss_weights[j / 2] * pair;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& integrand, double a,
                                    double b, double abs_tol, const QuadratureOptions& options) {
  if (!(abs_tol > 0.0)) {
    throw std::domain_error("integrate_adaptive: abs_tol must be positive");
  }
  std::priority_queue<Segment> heap;
  heap.push(gauss_kronrod(integrand, a, b, 0));
  double value = heap.top().value;
  double error = heap.top().error;

  while (error > abs_tol) {
    if (heap.size() >= options.max_intervals) {
      throw NonConvergenceError("integrate_adaptive: " + std::to_string(heap.size()) +
                                " intervals used, error estimate " + std::to_string(error) +
                                " above tolerance " + std::to_string(abs_tol));
    }
    const Segment worst = heap.top();
    if (worst.depth >= options.max_depth) {
      throw NonConvergenceError("integrate_adaptive: maximum refinement depth reached with error " +
                                std::to_string(error));
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gauss_kronrod(integrand, worst.a, mid, worst.depth + 1);
    const Segment right = gauss_kronrod(integrand, mid, worst.b, worst.depth + 1);
    heap.push(left);
    heap.push(right);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    // Running sums drift; resum once in a while.
    if (heap.size() % 64 == 0) {
      auto copy = heap;
      value = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        value += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }

  QuadratureResult result;
  result.intervals = heap.size();
  result.value = 0.0;
  result.error_estimate = 0.0;
  while (!heap.empty()) {
    result.value += heap.top().value;
    result.error_estimate += heap.top().error;
    heap.pop();
  }
  return result;
}

QuadratureResult integrate_halfline(const std::function<double(double)>& integrand,
                                    double abs_tol, const QuadratureOptions& options) {
  // int_0^inf g(t) dt = int_0^1 g(-log u) / u du.
  const auto transformed = [&integrand](double u) { return integrand(-std::log(u)) / u; };
  return integrate_adaptive(transformed, 0.0, 1.0, abs_tol, options);
}

}  // namespace sks
