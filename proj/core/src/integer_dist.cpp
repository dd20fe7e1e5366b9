#include "sks/integer_dist.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sks {

IntegerDist::IntegerDist() : min_support_(0), probabilities_{1.0}, tail_mass_(0.0) {}

IntegerDist::IntegerDist(std::int64_t min_support, std::vector<double> probabilities,
                         double tail_mass)
    : min_support_(min_support), probabilities_(std::move(probabilities)), tail_mass_(tail_mass) {
  if (probabilities_.empty()) {
    throw std::invalid_argument("IntegerDist: empty window");
  }
  if (!(tail_mass_ >= 0.0) || !(tail_mass_ < 1.0)) {
    throw std::invalid_argument("IntegerDist: tail mass must lie in [0, 1)");
  }
  double total = tail_mass_;
  for (double p : probabilities_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("IntegerDist: negative or non-finite probability");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw std::invalid_argument("IntegerDist: total mass " + std::to_string(total) +
                                " is not 1");
  }
}

IntegerDist IntegerDist::point_mass(std::int64_t k) { return IntegerDist(k, {1.0}, 0.0); }

double IntegerDist::operator()(std::int64_t k) const {
  if (k < min_support_ || k > max_support()) return 0.0;
  return probabilities_[static_cast<std::size_t>(k - min_support_)];
}

double IntegerDist::window_mass() const {
  return std::accumulate(probabilities_.begin(), probabilities_.end(), 0.0);
}

double IntegerDist::mean() const {
  double m = 0.0;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    m += static_cast<double>(min_support_ + static_cast<std::int64_t>(i)) * probabilities_[i];
  }
  return m;
}

double IntegerDist::variance() const {
  const double m = mean();
  double v = 0.0;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    const double d = static_cast<double>(min_support_ + static_cast<std::int64_t>(i)) - m;
    v += d * d * probabilities_[i];
  }
  return v;
}

IntegerDist IntegerDist::trimmed(double budget) const {
  std::size_t first = 0;
  std::size_t last = probabilities_.size();
  double tail = tail_mass_;
  while (last - first > 1) {
    const double front = probabilities_[first];
    const double back = probabilities_[last - 1];
    if (front <= back && tail + front <= budget) {
      tail += front;
      ++first;
    } else if (tail + back <= budget) {
      tail += back;
      --last;
    } else if (tail + front <= budget) {
      tail += front;
      ++first;
    } else {
      break;
    }
  }
  return IntegerDist(min_support_ + static_cast<std::int64_t>(first),
                     std::vector<double>(probabilities_.begin() + static_cast<std::ptrdiff_t>(first),
                                         probabilities_.begin() + static_cast<std::ptrdiff_t>(last)),
                     tail);
}

}  // namespace sks
