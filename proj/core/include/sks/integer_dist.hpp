#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sks {

/// Probability vector on the contiguous window
/// [min_support, min_support + size), plus the mass known to lie outside it.
///
/// Invariants (checked on construction): every entry is nonnegative,
/// window mass + tail_mass is within 1e-9 of one, and tail_mass < 1.
class IntegerDist {
 public:
  static constexpr double kNormalizationTolerance = 1e-9;

  /// Point mass at 0.
  IntegerDist();
  IntegerDist(std::int64_t min_support, std::vector<double> probabilities,
              double tail_mass = 0.0);

  static IntegerDist point_mass(std::int64_t k);

  std::int64_t min_support() const { return min_support_; }
  std::int64_t max_support() const {
    return min_support_ + static_cast<std::int64_t>(probabilities_.size()) - 1;
  }
  std::size_t size() const { return probabilities_.size(); }
  std::span<const double> probabilities() const { return probabilities_; }
  double tail_mass() const { return tail_mass_; }

  /// Probability at k; zero outside the window.
  double operator()(std::int64_t k) const;

  double window_mass() const;
  double mean() const;
  double variance() const;

  /// Drops edge entries while the accumulated tail stays within `budget`.
  IntegerDist trimmed(double budget) const;

  friend bool operator==(const IntegerDist&, const IntegerDist&) = default;

 private:
  std::int64_t min_support_ = 0;
  std::vector<double> probabilities_;
  double tail_mass_ = 0.0;
};

}  // namespace sks
