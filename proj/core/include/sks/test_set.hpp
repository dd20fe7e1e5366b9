#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sks/integer_dist.hpp"

namespace sks {

/// A subset A of the integers, used as the indicator test function 1_A.
///
/// Either an explicit finite set confined to a declared window, a half-line
/// {k >= a} or {k <= a}, or all of Z.
class TestSet {
 public:
  enum class Kind { explicit_set, at_least, at_most, everything };

  /// Throws std::invalid_argument if an element lies outside [window_lo, window_hi].
  static TestSet explicit_set(std::vector<std::int64_t> elements, std::int64_t window_lo,
                              std::int64_t window_hi);
  static TestSet explicit_set(std::vector<std::int64_t> elements);
  static TestSet at_least(std::int64_t a);
  static TestSet at_most(std::int64_t a);
  static TestSet everything();
  static TestSet empty();

  /// Parses `k>=a`, `k<=a`, `{a,b,c}`, `all` or `{}`.
  /// Throws std::invalid_argument on anything else.
  static TestSet parse(std::string_view spec);

  Kind kind() const { return kind_; }
  bool contains(std::int64_t k) const;

  /// Sum of d(k) over k in the set (window entries only).
  double measure(const IntegerDist& d) const;

  std::string to_string() const;

 private:
  TestSet(Kind kind, std::int64_t bound, std::vector<std::int64_t> elements,
          std::int64_t window_lo, std::int64_t window_hi);

  Kind kind_;
  std::int64_t bound_ = 0;
  std::vector<std::int64_t> elements_;  // sorted, unique
  std::int64_t window_lo_ = 0;
  std::int64_t window_hi_ = 0;
};

}  // namespace sks
