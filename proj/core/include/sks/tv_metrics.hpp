#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "sks/integer_dist.hpp"

namespace sks {

/// Total variation as an interval: the true distance lies in
/// [value - slack, value + slack], where slack covers window truncation.
struct TvInterval {
  double value = 0.0;
  double slack = 0.0;

  double lower() const { return value - slack < 0.0 ? 0.0 : value - slack; }
  double upper() const { return value + slack; }
};

inline constexpr std::size_t kMaxConvolutionSize = 10'000'000;

/// Half the l1 distance over the union window; slack = (tail1 + tail2) / 2.
TvInterval tv_distance(const IntegerDist& d1, const IntegerDist& d2);

/// Law of X + Y for independent X ~ d1, Y ~ d2. Tail masses add.
/// Throws ResourceLimitError if the result window would exceed kMaxConvolutionSize.
IntegerDist convolve(const IntegerDist& d1, const IntegerDist& d2);

/// Law of -X.
IntegerDist negate(const IntegerDist& d);

/// Normalized histogram of `samples`. Throws std::invalid_argument when empty.
IntegerDist empirical_dist(std::span<const std::int64_t> samples);

}  // namespace sks
