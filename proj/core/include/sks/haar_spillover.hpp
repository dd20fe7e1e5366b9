#pragma once

#include <cstdint>
#include <istream>
#include <random>
#include <vector>

#include "sks/skellam.hpp"
#include "sks/tv_metrics.hpp"

namespace sks::haar {

/// Positive and negative inclusion vectors of one Haar coefficient.
struct HaarWindows {
  std::vector<int> positive;
  std::vector<int> negative;
};

/// Left half of [location 2^scale, (location + 1) 2^scale) goes to P, right half to N.
/// Throws std::invalid_argument when the window does not fit in [0, n) or scale < 1.
HaarWindows haar_windows(std::size_t n, int scale, std::int64_t location);

/// Poisson intensities f over n bins, a Haar coefficient's windows, and the
/// probability p that a photon is recorded one bin lower. Bins past the end
/// carry zero intensity and photons leaving bin 0 are lost.
class HaarSpilloverModel {
 public:
  /// Throws std::invalid_argument on negative or non-finite intensities,
  /// mismatched lengths, non-0/1 inclusions, overlapping windows or p outside [0, 1].
  HaarSpilloverModel(std::vector<double> f, std::vector<int> positive,
                     std::vector<int> negative, double p);
  HaarSpilloverModel(std::vector<double> f, const HaarWindows& windows, double p);

  std::size_t size() const { return f_.size(); }
  const std::vector<double>& intensities() const { return f_; }
  const std::vector<int>& positive() const { return positive_; }
  const std::vector<int>& negative() const { return negative_; }
  double spill_probability() const { return p_; }

  double positive_mass() const;          ///< P . f
  double negative_mass() const;          ///< N . f
  double positive_shifted_mass() const;  ///< P . f^{(-1)}, f^{(-1)}_i = f_{i+1}
  double negative_shifted_mass() const;  ///< N . f^{(-1)}

 private:
  std::vector<double> f_;
  std::vector<int> positive_;
  std::vector<int> negative_;
  double p_;
};

/// Reads newline-separated nonnegative intensities. Blank lines and lines
/// starting with '#' are skipped; anything else that does not parse throws
/// std::invalid_argument.
std::vector<double> read_signal(std::istream& in);

/// (P . f, N . f).
SkellamParams true_coeff_params(const HaarSpilloverModel& model);

/// ((1 - p) P . f + p P . f^{(-1)}, (1 - p) N . f + p N . f^{(-1)}).
SkellamParams observed_coeff_params(const HaarSpilloverModel& model);

/// sqrt(2 p^2 / (e max(P.f, N.f))) (|P.f - P.f^{(-1)}| + |N.f - N.f^{(-1)}|).
/// Zero when p = 0 or both differences vanish; +infinity when max(P.f, N.f) = 0
/// with a nonzero difference.
double tv_bound(const HaarSpilloverModel& model);

/// Exact TV between the observed and true coefficient laws.
TvInterval tv_observed_vs_true(const HaarSpilloverModel& model, double tail_tol = 1e-14);

struct SpilloverSamples {
  std::vector<std::int64_t> true_coeffs;
  std::vector<std::int64_t> observed_coeffs;
};

SpilloverSamples simulate_spillover(const HaarSpilloverModel& model, std::mt19937_64& rng,
                                    std::size_t trials);

struct VerifyReport {
  TvInterval tv;
  double bound = 0.0;
  bool bound_infinite = false;
  bool satisfied = false;
  double ratio = 0.0;
  SkellamParams true_params = SkellamParams::extended(0.0, 0.0);
  SkellamParams observed_params = SkellamParams::extended(0.0, 0.0);
};

VerifyReport verify(const HaarSpilloverModel& model);

struct SweepRow {
  int scale = 0;
  std::int64_t location = 0;
  VerifyReport report;
};

/// Verifies every dyadic coefficient with scale in [1, max_scale] that fits the signal.
std::vector<SweepRow> sweep(const std::vector<double>& f, double p, int max_scale);

/// Random model: n = 2^j for j uniform in [1, 6], f uniform on [0, 10], a
/// random dyadic window and p uniform on [0, 1].
HaarSpilloverModel random_model(std::mt19937_64& rng);

}  // namespace sks::haar
