#include "sks/tv_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sks/errors.hpp"

namespace sks {

TvInterval tv_distance(const IntegerDist& d1, const IntegerDist& d2) {
  const std::int64_t lo = std::min(d1.min_support(), d2.min_support());
  const std::int64_t hi = std::max(d1.max_support(), d2.max_support());
  double sum = 0.0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    sum += std::abs(d1(k) - d2(k));
  }
  return {0.5 * sum, 0.5 * (d1.tail_mass() + d2.tail_mass())};
}

IntegerDist convolve(const IntegerDist& d1, const IntegerDist& d2) {
  const std::size_t n1 = d1.size();
  const std::size_t n2 = d2.size();
  const std::size_t n = n1 + n2 - 1;
  if (n > kMaxConvolutionSize) {
    throw ResourceLimitError("convolve: result window of " + std::to_string(n) +
                             " points exceeds the size cap");
  }
  // Iterate over the shorter operand in the outer loop so the inner loop is
  // a contiguous axpy over the longer one.
  const bool swap = n1 < n2;
  const auto a = swap ? d2.probabilities() : d1.probabilities();
  const auto b = swap ? d1.probabilities() : d2.probabilities();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < b.size(); ++j) {
    const double w = b[j];
    if (w == 0.0) continue;
    double* dst = out.data() + j;
    for (std::size_t i = 0; i < a.size(); ++i) dst[i] += w * a[i];
  }
  const double tail = std::min(d1.tail_mass() + d2.tail_mass(), std::nextafter(1.0, 0.0));
  return IntegerDist(d1.min_support() + d2.min_support(), std::move(out), tail);
}

IntegerDist negate(const IntegerDist& d) {
  const auto p = d.probabilities();
  return IntegerDist(-d.max_support(), std::vector<double>(p.rbegin(), p.rend()), d.tail_mass());
}

IntegerDist empirical_dist(std::span<const std::int64_t> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("empirical_dist: no samples");
  }
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  std::vector<double> counts(static_cast<std::size_t>(*hi - *lo + 1), 0.0);
  for (std::int64_t s : samples) counts[static_cast<std::size_t>(s - *lo)] += 1.0;
  const double n = static_cast<double>(samples.size());
  for (double& c : counts) c /= n;
  return IntegerDist(*lo, std::move(counts), 0.0);
}

}  // namespace sks
