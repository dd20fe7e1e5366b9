#include "sks/noisy_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "json.hpp"

#include "sks/errors.hpp"

namespace sks::graph {
namespace {

constexpr double kSkellamTail = 1e-15;
// Edge entries below this are folded into the tail while convolving.
constexpr double kNegligible = 1e-300;

void check_unit(const std::vector<double>& v, const char* name) {
  for (double x : v) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument(std::string("NoisyGraphModel: entries of ") + name +
                                  " must lie in [0, 1]");
    }
  }
}

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

}  // namespace

NoisyGraphModel::NoisyGraphModel(std::vector<double> p, std::vector<double> r,
                                 std::vector<double> s)
    : p_(std::move(p)), r_(std::move(r)), s_(std::move(s)) {
  if (p_.empty()) throw std::invalid_argument("NoisyGraphModel: need at least one vertex pair");
  if (r_.size() != p_.size() || s_.size() != p_.size()) {
    throw std::invalid_argument("NoisyGraphModel: p, r and s must have equal length");
  }
  check_unit(p_, "p");
  check_unit(r_, "r");
  check_unit(s_, "s");
}

NoisyGraphModel NoisyGraphModel::homogeneous(std::size_t n, double p, double r, double s) {
  return NoisyGraphModel(std::vector<double>(n, p), std::vector<double>(n, r),
                         std::vector<double>(n, s));
}

NoisyGraphModel NoisyGraphModel::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("model file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("p") || !j.contains("r") || !j.contains("s")) {
    throw std::invalid_argument("model file: expected an object with fields p, r, s");
  }
  try {
    if (j.contains("n")) {
      const auto n = j.at("n").get<std::int64_t>();
      if (n < 1) throw std::invalid_argument("model file: n must be positive");
      return homogeneous(static_cast<std::size_t>(n), j.at("p").get<double>(),
                         j.at("r").get<double>(), j.at("s").get<double>());
    }
    return NoisyGraphModel(j.at("p").get<std::vector<double>>(),
                           j.at("r").get<std::vector<double>>(),
                           j.at("s").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model file: ") + e.what());
  }
}

SkellamParams skellam_params(const NoisyGraphModel& model) {
  double l1 = 0.0;
  double l2 = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    l1 += model.false_negative_rate(i);
    l2 += model.false_positive_rate(i);
  }
  return SkellamParams::extended(l1, l2);
}

IntegerDist edge_difference_dist(const NoisyGraphModel& model) {
  const std::size_t n = model.size();
  if (n > kMaxExactPairs) {
    throw ResourceLimitError("edge_difference_dist: more than " + std::to_string(kMaxExactPairs) +
                             " vertex pairs; use simulation");
  }
  // probs[j] = P(U - V = lo + j). Each pair multiplies by a three-point law.
  std::vector<double> probs{1.0};
  std::vector<double> next;
  std::int64_t lo = 0;
  double tail = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double up = model.false_negative_rate(i);
    const double down = model.false_positive_rate(i);
    const double stay = std::max(0.0, 1.0 - up - down);
    next.assign(probs.size() + 2, 0.0);
    for (std::size_t j = 0; j < probs.size(); ++j) {
      next[j] += down * probs[j];
      next[j + 1] += stay * probs[j];
      next[j + 2] += up * probs[j];
    }
    --lo;
    std::size_t first = 0;
    while (first + 1 < next.size() && next[first] < kNegligible) tail += next[first++];
    std::size_t last = next.size();
    while (last > first + 1 && next[last - 1] < kNegligible) tail += next[--last];
    lo += static_cast<std::int64_t>(first);
    probs.assign(next.begin() + static_cast<std::ptrdiff_t>(first),
                 next.begin() + static_cast<std::ptrdiff_t>(last));
  }
  return IntegerDist(lo, std::move(probs), tail);
}

GraphBound tv_bound(const NoisyGraphModel& model) {
  double total = 0.0;
  double squares = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const double q = model.false_negative_rate(i) + model.false_positive_rate(i);
    total += q;
    squares += q * q;
  }
  if (total == 0.0) return {};
  const double r2 = std::numbers::sqrt2;
  const double head = 2.0 / (total * total);
  return {squares * (head + 2.0 * r2 * log_plus(r2 * total) / total),
          squares * (head + 2.0 * r2 * std::log(r2 * total) / total)};
}

std::vector<std::int64_t> simulate(const NoisyGraphModel& model, std::mt19937_64& rng,
                                   std::size_t trials) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::int64_t> out;
  out.reserve(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    std::int64_t diff = 0;
    for (std::size_t i = 0; i < model.size(); ++i) {
      const bool edge = unif(rng) < model.p()[i];
      if (edge) {
        if (unif(rng) < model.r()[i]) ++diff;  // missed true edge
      } else {
        if (unif(rng) < model.s()[i]) --diff;  // spurious edge
      }
    }
    out.push_back(diff);
  }
  return out;
}

VerifyReport verify(const NoisyGraphModel& model) {
  VerifyReport rep;
  rep.params = skellam_params(model);
  rep.tv = tv_distance(edge_difference_dist(model), to_dist(rep.params, kSkellamTail));
  const GraphBound b = tv_bound(model);
  rep.bound = b.value;
  rep.bound_raw_log = b.raw_log;
  rep.satisfied = rep.tv.upper() <= rep.bound || (rep.bound == 0.0 && rep.tv.value == 0.0);
  rep.ratio = rep.bound > 0.0 ? rep.tv.value / rep.bound : 0.0;
  return rep;
}

NoisyGraphModel random_model(std::mt19937_64& rng, std::size_t max_n) {
  if (max_n < 1) throw std::invalid_argument("random_model: max_n must be positive");
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::size_t n = size(rng);
  std::vector<double> p(n), r(n), s(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = unif(rng);
    r[i] = unif(rng);
    s[i] = unif(rng);
  }
  return NoisyGraphModel(std::move(p), std::move(r), std::move(s));
}

}  // namespace sks::graph
