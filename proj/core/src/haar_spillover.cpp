#include "sks/haar_spillover.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sks::haar {
namespace {

void check_inclusion(const std::vector<int>& v, std::size_t n, const char* name) {
  if (v.size() != n) {
    throw std::invalid_argument(std::string("HaarSpilloverModel: ") + name +
                                " must have the signal's length");
  }
  for (int x : v) {
    if (x != 0 && x != 1) {
      throw std::invalid_argument(std::string("HaarSpilloverModel: ") + name + " must be 0/1");
    }
  }
}

double dot(const std::vector<int>& w, const std::vector<double>& f, std::size_t shift) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != 0 && i + shift < f.size()) s += f[i + shift];
  }
  return s;
}

// (1 - p) a + p b, written so that a == b gives a exactly.
double mix(double a, double b, double p) { return a + p * (b - a); }

}  // namespace

HaarWindows haar_windows(std::size_t n, int scale, std::int64_t location) {
  if (scale < 1 || scale > 62) throw std::invalid_argument("haar_windows: scale must be >= 1");
  if (location < 0) throw std::invalid_argument("haar_windows: location must be >= 0");
  const std::int64_t width = std::int64_t{1} << scale;
  const std::int64_t start = location * width;
  if (location > std::numeric_limits<std::int64_t>::max() / width ||
      start + width > static_cast<std::int64_t>(n)) {
    throw std::invalid_argument("haar_windows: window does not fit in the signal");
  }
  HaarWindows w{std::vector<int>(n, 0), std::vector<int>(n, 0)};
  for (std::int64_t i = 0; i < width / 2; ++i) {
    w.positive[static_cast<std::size_t>(start + i)] = 1;
    w.negative[static_cast<std::size_t>(start + width / 2 + i)] = 1;
  }
  return w;
}

HaarSpilloverModel::HaarSpilloverModel(std::vector<double> f, std::vector<int> positive,
                                       std::vector<int> negative, double p)
    : f_(std::move(f)), positive_(std::move(positive)), negative_(std::move(negative)), p_(p) {
  for (double x : f_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("HaarSpilloverModel: intensities must be finite and >= 0");
    }
  }
  check_inclusion(positive_, f_.size(), "P");
  check_inclusion(negative_, f_.size(), "N");
  for (std::size_t i = 0; i < f_.size(); ++i) {
    if (positive_[i] != 0 && negative_[i] != 0) {
      throw std::invalid_argument("HaarSpilloverModel: P and N overlap at bin " +
                                  std::to_string(i));
    }
  }
  if (!(p_ >= 0.0 && p_ <= 1.0)) {
    throw std::invalid_argument("HaarSpilloverModel: p must lie in [0, 1]");
  }
}

HaarSpilloverModel::HaarSpilloverModel(std::vector<double> f, const HaarWindows& windows,
                                       double p)
    : HaarSpilloverModel(std::move(f), windows.positive, windows.negative, p) {}

double HaarSpilloverModel::positive_mass() const { return dot(positive_, f_, 0); }
double HaarSpilloverModel::negative_mass() const { return dot(negative_, f_, 0); }
double HaarSpilloverModel::positive_shifted_mass() const { return dot(positive_, f_, 1); }
double HaarSpilloverModel::negative_shifted_mass() const { return dot(negative_, f_, 1); }

std::vector<double> read_signal(std::istream& in) {
  std::vector<double> f;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    double x = 0.0;
    std::string rest;
    if (!(ss >> x) || (ss >> rest)) {
      throw std::invalid_argument("signal line " + std::to_string(lineno) + ": not a number");
    }
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw std::invalid_argument("signal line " + std::to_string(lineno) +
                                  ": intensity must be finite and >= 0");
    }
    f.push_back(x);
  }
  if (f.empty()) throw std::invalid_argument("signal: no intensities");
  return f;
}

SkellamParams true_coeff_params(const HaarSpilloverModel& model) {
  return SkellamParams::extended(model.positive_mass(), model.negative_mass());
}

SkellamParams observed_coeff_params(const HaarSpilloverModel& model) {
  const double p = model.spill_probability();
  return SkellamParams::extended(mix(model.positive_mass(), model.positive_shifted_mass(), p),
                                 mix(model.negative_mass(), model.negative_shifted_mass(), p));
}

double tv_bound(const HaarSpilloverModel& model) {
  const double p = model.spill_probability();
  const double diff = std::abs(model.positive_mass() - model.positive_shifted_mass()) +
                      std::abs(model.negative_mass() - model.negative_shifted_mass());
  if (p == 0.0 || diff == 0.0) return 0.0;
  const double m = std::max(model.positive_mass(), model.negative_mass());
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(2.0 * p * p / (std::numbers::e * m)) * diff;
}

TvInterval tv_observed_vs_true(const HaarSpilloverModel& model, double tail_tol) {
  const SkellamParams obs = observed_coeff_params(model);
  const SkellamParams tru = true_coeff_params(model);
  if (obs == tru) return {};
  return tv_distance(to_dist(obs, 0.5 * tail_tol), to_dist(tru, 0.5 * tail_tol));
}

SpilloverSamples simulate_spillover(const HaarSpilloverModel& model, std::mt19937_64& rng,
                                    std::size_t trials) {
  const std::size_t n = model.size();
  const auto& f = model.intensities();
  const auto& pos = model.positive();
  const auto& neg = model.negative();
  SpilloverSamples out;
  out.true_coeffs.reserve(trials);
  out.observed_coeffs.reserve(trials);
  std::vector<std::int64_t> counts(n);
  std::vector<std::int64_t> moved(n);
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      counts[i] = f[i] > 0.0 ? std::poisson_distribution<std::int64_t>(f[i])(rng) : 0;
      moved[i] = counts[i] > 0
                     ? std::binomial_distribution<std::int64_t>(counts[i],
                                                                model.spill_probability())(rng)
                     : 0;
    }
    std::int64_t true_coeff = 0;
    std::int64_t observed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t sign = pos[i] != 0 ? 1 : (neg[i] != 0 ? -1 : 0);
      const std::int64_t recorded = counts[i] - moved[i] + (i + 1 < n ? moved[i + 1] : 0);
      true_coeff += sign * counts[i];
      observed += sign * recorded;
    }
    out.true_coeffs.push_back(true_coeff);
    out.observed_coeffs.push_back(observed);
  }
  return out;
}

VerifyReport verify(const HaarSpilloverModel& model) {
  VerifyReport rep;
  rep.true_params = true_coeff_params(model);
  rep.observed_params = observed_coeff_params(model);
  rep.tv = tv_observed_vs_true(model);
  rep.bound = tv_bound(model);
  rep.bound_infinite = std::isinf(rep.bound);
  rep.satisfied = rep.bound_infinite || rep.tv.upper() <= rep.bound;
  rep.ratio = (rep.bound > 0.0 && !rep.bound_infinite) ? rep.tv.value / rep.bound : 0.0;
  return rep;
}

std::vector<SweepRow> sweep(const std::vector<double>& f, double p, int max_scale) {
  std::vector<SweepRow> rows;
  for (int scale = 1; scale <= max_scale && scale < 62; ++scale) {
    const std::size_t width = std::size_t{1} << scale;
    if (width > f.size()) break;
    for (std::size_t loc = 0; (loc + 1) * width <= f.size(); ++loc) {
      const auto loc_i = static_cast<std::int64_t>(loc);
      const HaarSpilloverModel model(f, haar_windows(f.size(), scale, loc_i), p);
      rows.push_back({scale, loc_i, verify(model)});
    }
  }
  return rows;
}

HaarSpilloverModel random_model(std::mt19937_64& rng) {
  const int j = std::uniform_int_distribution<int>(1, 6)(rng);
  const std::size_t n = std::size_t{1} << j;
  std::uniform_real_distribution<double> intensity(0.0, 10.0);
  std::vector<double> f(n);
  for (double& x : f) x = intensity(rng);
  const int scale = std::uniform_int_distribution<int>(1, j)(rng);
  const auto locations = static_cast<std::int64_t>(n >> scale);
  const std::int64_t loc = std::uniform_int_distribution<std::int64_t>(0, locations - 1)(rng);
  const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return HaarSpilloverModel(std::move(f), haar_windows(n, scale, loc), p);
}

}  // namespace sks::haar
