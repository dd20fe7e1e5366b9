#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sks/integer_dist.hpp"
#include "sks/skellam.hpp"
#include "sks/tv_metrics.hpp"

namespace sks::graph {

inline constexpr std::size_t kMaxExactPairs = 100'000;

/// Edge model over n vertex pairs: pair i carries an edge with probability
/// p[i]; a true edge is missed with probability r[i] and a non-edge is
/// reported with probability s[i].
class NoisyGraphModel {
 public:
  /// Throws std::invalid_argument on length mismatch, n = 0 or entries outside [0, 1].
  NoisyGraphModel(std::vector<double> p, std::vector<double> r, std::vector<double> s);

  static NoisyGraphModel homogeneous(std::size_t n, double p, double r, double s);

  /// Accepts {"p": [...], "r": [...], "s": [...]} or {"n": N, "p": x, "r": y, "s": z}.
  static NoisyGraphModel from_json(const std::string& text);

  std::size_t size() const { return p_.size(); }
  const std::vector<double>& p() const { return p_; }
  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& s() const { return s_; }

  /// P(pair i is a false negative) = p r.
  double false_negative_rate(std::size_t i) const { return p_[i] * r_[i]; }
  /// P(pair i is a false positive) = (1 - p) s.
  double false_positive_rate(std::size_t i) const { return (1.0 - p_[i]) * s_[i]; }

 private:
  std::vector<double> p_;
  std::vector<double> r_;
  std::vector<double> s_;
};

/// (sum p r, sum s (1 - p)), with the zero-rate convention.
SkellamParams skellam_params(const NoisyGraphModel& model);

/// Exact law of U - V: the convolution of the per-pair laws on {-1, 0, +1}.
/// Throws ResourceLimitError for more than kMaxExactPairs pairs.
IntegerDist edge_difference_dist(const NoisyGraphModel& model);

struct GraphBound {
  double value = 0.0;    ///< evaluated with log+
  double raw_log = 0.0;  ///< evaluated with log, may be negative
};

/// sum q_i^2 [2 / Q^2 + 2 sqrt(2) log+(sqrt(2) Q) / Q] with q_i = p r + (1 - p) s
/// and Q = sum q_i; zero when Q = 0.
GraphBound tv_bound(const NoisyGraphModel& model);

/// One draw of U - V per trial.
std::vector<std::int64_t> simulate(const NoisyGraphModel& model, std::mt19937_64& rng,
                                   std::size_t trials);

struct VerifyReport {
  TvInterval tv;
  double bound = 0.0;
  double bound_raw_log = 0.0;
  bool satisfied = false;
  double ratio = 0.0;
  SkellamParams params = SkellamParams::extended(0.0, 0.0);
};

/// Exact TV between L(U - V) and Sk(l1, l2) against the bound.
VerifyReport verify(const NoisyGraphModel& model);

/// Random model with n uniform on [1, max_n] and entries uniform on [0, 1].
NoisyGraphModel random_model(std::mt19937_64& rng, std::size_t max_n);

}  // namespace sks::graph
