// Difference kernels of the Stein solution for a whole rectangle of states.
//
// With u = e^{-t}, the coupling gives, at state (x, y),
//   Delta_1 h   = -sum_k f(k) [L1(k-1) - L1(k)],
//   Delta_11 h  = -sum_k f(k) [L2(k-2) - 2 L2(k-1) + L2(k)],
// and shifts thereof for the other coordinates, where
//   L1(k) = int_0^1 P(W_u = k) du,   L2(k) = int_0^1 u P(W_u = k) du,
//   W_u  ~ Sk(l1 (1-u), l2 (1-u)) + Bin(x, u) - Bin(y, u).
// All states share one Gauss-Kronrod partition of [0, 1]. Moving from (x, y)
// to (x, y+1) convolves each node's law with a negated Bernoulli(u), which is
// O(window) per node, so a full grid costs a few passes over the windows.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "sks/errors.hpp"
#include "sks/quadrature.hpp"
#include "sks/special_functions.hpp"
#include "sks/stein.hpp"
#include "sks/tv_metrics.hpp"

namespace sks {
namespace {

constexpr std::size_t kTypes = kAllDifferenceTypes.size();
constexpr std::size_t kNodesPerInterval = 15;
constexpr std::size_t kMaxIntervals = 4000;
constexpr std::int64_t kRowsPerChunk = 16;
constexpr int kMaxFullPasses = 6;

struct Node {
  double u;
  double kronrod_weight;
  double gauss_weight;  // zero for Kronrod-only abscissae
};

std::vector<Node> build_nodes(const std::vector<double>& breaks) {
  using R = GaussKronrod15;
  std::vector<Node> nodes;
  nodes.reserve((breaks.size() - 1) * kNodesPerInterval);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double c = 0.5 * (breaks[i] + breaks[i + 1]);
    const double h = 0.5 * (breaks[i + 1] - breaks[i]);
    for (std::size_t j = 0; j < 7; ++j) {
      const double wg = j % 2 == 1 ? R::gauss_weights[j / 2] * h : 0.0;
      nodes.push_back({c - h * R::abscissae[j], R::kronrod_weights[j] * h, wg});
      nodes.push_back({c + h * R::abscissae[j], R::kronrod_weights[j] * h, wg});
    }
    nodes.push_back({c, R::kronrod_weights[7] * h, R::gauss_weights[3] * h});
  }
  return nodes;
}

// A lattice law that supports in-place convolution with +-Bernoulli(u) and
// trimming of negligible edge mass. Active entries are buf_[head_, end).
class Chain {
 public:
  Chain() = default;
  explicit Chain(const IntegerDist& d)
      : lo_(d.min_support()),
        buf_(d.probabilities().begin(), d.probabilities().end()),
        dropped_(d.tail_mass()) {}

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(size()) - 1; }
  std::size_t size() const { return buf_.size() - head_; }
  const double* data() const { return buf_.data() + head_; }
  double dropped() const { return dropped_; }

  // Law of X + B (down = false) or X - B (down = true), B ~ Bernoulli(u).
  // new[i] = a old[i] + b old[i-1] over the grown window, where the index
  // shift absorbs the direction.
  void step(double u, bool down) {
    const double a = down ? u : 1.0 - u;
    const double b = down ? 1.0 - u : u;
    buf_.push_back(0.0);
    const std::size_t end = buf_.size() - 1;
    for (std::size_t i = end; i > head_; --i) buf_[i] = a * buf_[i] + b * buf_[i - 1];
    buf_[head_] *= a;
    if (down) --lo_;
  }

  void trim(double edge_threshold, double budget) {
    while (size() > 1) {
      const double front = buf_[head_];
      if (front < edge_threshold && dropped_ + front <= budget) {
        dropped_ += front;
        ++head_;
        ++lo_;
      } else {
        break;
      }
    }
    while (size() > 1) {
      const double back = buf_.back();
      if (back < edge_threshold && dropped_ + back <= budget) {
        dropped_ += back;
        buf_.pop_back();
      } else {
        break;
      }
    }
    if (head_ > 256 && head_ * 2 > buf_.size()) {
      buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(head_));
      head_ = 0;
    }
  }

 private:
  std::int64_t lo_ = 0;
  std::vector<double> buf_;
  std::size_t head_ = 0;
  double dropped_ = 0.0;
};

struct SweepSettings {
  SkellamParams params;
  double quad_tol;
  double budget;          // neglected mass allowed per node
  double edge_threshold;  // per-entry trimming threshold inside chains
};

// Law at (x, y) for node u built by direct convolution.
Chain initial_chain(const IntegerDist& immigrants, std::int64_t x, std::int64_t y, double u,
                    const SweepSettings& s) {
  const IntegerDist up = binomial_thin_dist(x, u).trimmed(0.125 * s.budget);
  const IntegerDist down = negate(binomial_thin_dist(y, u).trimmed(0.125 * s.budget));
  Chain c(convolve(convolve(immigrants, up), down));
  c.trim(s.edge_threshold, s.budget);
  return c;
}

struct PassOutput {
  std::vector<StateFactors> states;
  std::vector<double> interval_error;  // max over states and types
  std::vector<DifferenceKernel> kernels;
};

class StateAccumulator {
 public:
  StateAccumulator(std::size_t intervals, bool keep) : intervals_(intervals), keep_(keep) {}

  // Integrates the node laws for one state into kernels and error estimates.
  void process(const std::vector<Node>& nodes, const std::vector<Chain>& chains,
               BivariateState state, PassOutput& out) {
    std::int64_t lo = chains.front().lo();
    std::int64_t hi = chains.front().hi();
    double dropped = 0.0;
    for (const Chain& c : chains) {
      lo = std::min(lo, c.lo());
      hi = std::max(hi, c.hi());
      dropped = std::max(dropped, c.dropped());
    }
    base_ = lo - 2;
    const auto width = static_cast<std::size_t>(hi - lo + 5);
    for (auto* v : {&l1_, &l2_, &k1_, &k2_, &g1_, &g2_}) v->assign(width, 0.0);

    std::array<double, 2> err_by_order{0.0, 0.0};
    for (std::size_t iv = 0; iv < intervals_; ++iv) {
      std::size_t imin = width;
      std::size_t imax = 0;
      for (std::size_t n = iv * kNodesPerInterval; n < (iv + 1) * kNodesPerInterval; ++n) {
        const Node& node = nodes[n];
        const Chain& c = chains[n];
        const auto off = static_cast<std::size_t>(c.lo() - base_);
        const double* p = c.data();
        const std::size_t len = c.size();
        imin = std::min(imin, off);
        imax = std::max(imax, off + len - 1);
        const double wk1 = node.kronrod_weight;
        const double wk2 = node.kronrod_weight * node.u;
        double* k1 = k1_.data() + off;
        double* k2 = k2_.data() + off;
        for (std::size_t i = 0; i < len; ++i) {
          k1[i] += wk1 * p[i];
          k2[i] += wk2 * p[i];
        }
        if (node.gauss_weight != 0.0) {
          const double wg1 = node.gauss_weight;
          const double wg2 = node.gauss_weight * node.u;
          double* g1 = g1_.data() + off;
          double* g2 = g2_.data() + off;
          for (std::size_t i = 0; i < len; ++i) {
            g1[i] += wg1 * p[i];
            g2[i] += wg2 * p[i];
          }
        }
      }
      // l1 norms of the first and second differences of (K - G).
      double e1 = 0.0;
      double e2 = 0.0;
      double dm2 = 0.0;  // (K - G) at i - 2
      double dm1 = 0.0;  // (K - G) at i - 1, order 1
      double em1 = 0.0;  // (K - G) at i - 1, order 2
      for (std::size_t i = imin; i <= imax + 2; ++i) {
        const double d1 = k1_[i] - g1_[i];
        const double d2 = k2_[i] - g2_[i];
        e1 += std::abs(dm1 - d1);
        e2 += std::abs(dm2 - 2.0 * em1 + d2);
        dm1 = d1;
        dm2 = em1;
        em1 = d2;
        l1_[i] += k1_[i];
        l2_[i] += k2_[i];
        k1_[i] = k2_[i] = g1_[i] = g2_[i] = 0.0;
      }
      err_by_order[0] += e1;
      err_by_order[1] += e2;
      double& slot = out.interval_error[iv];
      slot = std::max(slot, std::max(e1, e2));
    }

    StateFactors sf;
    sf.state = state;
    for (std::size_t t = 0; t < kTypes; ++t) {
      const DifferenceType type = kAllDifferenceTypes[t];
      const int order = order_of(type);
      double pos = 0.0;
      double neg = 0.0;
      std::vector<double> values;
      if (keep_) values.reserve(width);
      for (std::size_t i = 0; i < width; ++i) {
        const double g = kernel_value(type, i);
        (g > 0.0 ? pos : neg) += std::abs(g);
        if (keep_) values.push_back(g);
      }
      sf.factor[t] = std::max(pos, neg);
      sf.kernel_sum[t] = pos - neg;
      sf.error_bound[t] = err_by_order[order - 1] + (order == 1 ? 2.0 : 4.0) * dropped;
      if (keep_) {
        DifferenceKernel k;
        k.type = type;
        k.state = state;
        k.min_support = base_;
        k.values = std::move(values);
        k.error_bound = sf.error_bound[t];
        out.kernels.push_back(std::move(k));
      }
    }
    out.states.push_back(sf);
  }

 private:
  // Kernel entry at lattice index i (k = base_ + i). Out-of-range reads are zero.
  double kernel_value(DifferenceType type, std::size_t i) const {
    const auto at = [](const std::vector<double>& v, std::ptrdiff_t j) {
      return j < 0 || j >= static_cast<std::ptrdiff_t>(v.size()) ? 0.0
                                                                  : v[static_cast<std::size_t>(j)];
    };
    const auto j = static_cast<std::ptrdiff_t>(i);
    switch (type) {
      case DifferenceType::d1:
        return at(l1_, j - 1) - at(l1_, j);
      case DifferenceType::d2:
        return at(l1_, j + 1) - at(l1_, j);
      case DifferenceType::d11:
        return at(l2_, j - 2) - 2.0 * at(l2_, j - 1) + at(l2_, j);
      case DifferenceType::d12:
        return 2.0 * at(l2_, j) - at(l2_, j - 1) - at(l2_, j + 1);
      case DifferenceType::d22:
        return at(l2_, j + 2) - 2.0 * at(l2_, j + 1) + at(l2_, j);
    }
    return 0.0;
  }

  std::size_t intervals_;
  bool keep_;
  std::int64_t base_ = 0;
  std::vector<double> l1_, l2_, k1_, k2_, g1_, g2_;
};

// Processes rows [x_begin, x_end] x [y_lo, y_hi].
PassOutput process_block(const SweepSettings& s, const std::vector<Node>& nodes,
                         const std::vector<IntegerDist>& immigrants, std::size_t intervals,
                         std::int64_t x_begin, std::int64_t x_end, std::int64_t y_lo,
                         std::int64_t y_hi, bool keep) {
  PassOutput out;
  out.interval_error.assign(intervals, 0.0);
  StateAccumulator acc(intervals, keep);
  std::vector<Chain> rows(nodes.size());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    rows[n] = initial_chain(immigrants[n], x_begin, y_lo, nodes[n].u, s);
  }
  std::vector<Chain> cur;
  for (std::int64_t x = x_begin; x <= x_end; ++x) {
    if (x > x_begin) {
      for (std::size_t n = 0; n < nodes.size(); ++n) {
        rows[n].step(nodes[n].u, false);
        rows[n].trim(s.edge_threshold, s.budget);
      }
    }
    cur = rows;
    for (std::int64_t y = y_lo; y <= y_hi; ++y) {
      if (y > y_lo) {
        for (std::size_t n = 0; n < nodes.size(); ++n) {
          cur[n].step(nodes[n].u, true);
          cur[n].trim(s.edge_threshold, s.budget);
        }
      }
      acc.process(nodes, cur, {x, y}, out);
    }
  }
  return out;
}

struct Rect {
  std::int64_t x_lo, x_hi, y_lo, y_hi;
};

struct PassResult {
  std::vector<StateFactors> states;
  std::vector<double> interval_error;
  std::vector<DifferenceKernel> kernels;
  double worst_error = 0.0;
};

PassResult run_pass(const SweepSettings& s, const std::vector<double>& breaks,
                    const std::vector<Rect>& blocks, bool keep) {
  const std::vector<Node> nodes = build_nodes(breaks);
  const std::size_t intervals = breaks.size() - 1;
  std::vector<IntegerDist> immigrants;
  immigrants.reserve(nodes.size());
  for (const Node& n : nodes) {
    const SkellamParams at = SkellamParams::extended(s.params.lambda1() * (1.0 - n.u),
                                                     s.params.lambda2() * (1.0 - n.u));
    immigrants.push_back(to_dist(at, 0.25 * s.budget));
  }

  // Work items are fixed-size row chunks so results do not depend on the
  // number of threads.
  struct Item {
    Rect r;
  };
  std::vector<Item> items;
  for (const Rect& b : blocks) {
    for (std::int64_t x = b.x_lo; x <= b.x_hi; x += kRowsPerChunk) {
      items.push_back({{x, std::min(b.x_hi, x + kRowsPerChunk - 1), b.y_lo, b.y_hi}});
    }
  }
  std::vector<PassOutput> outputs(items.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), items.size()));
  const auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < items.size(); i += workers) {
      const Rect& r = items[i].r;
      outputs[i] = process_block(s, nodes, immigrants, intervals, r.x_lo, r.x_hi, r.y_lo, r.y_hi, keep);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
  }

  PassResult result;
  result.interval_error.assign(intervals, 0.0);
  for (PassOutput& o : outputs) {
    for (std::size_t i = 0; i < intervals; ++i) {
      result.interval_error[i] = std::max(result.interval_error[i], o.interval_error[i]);
    }
    for (const StateFactors& sf : o.states) {
      for (double e : sf.error_bound) result.worst_error = std::max(result.worst_error, e);
    }
    result.states.insert(result.states.end(), o.states.begin(), o.states.end());
    for (auto& k : o.kernels) result.kernels.push_back(std::move(k));
  }
  return result;
}

std::vector<double> initial_breaks(const SkellamParams& params, std::int64_t x_hi,
                                   std::int64_t y_hi) {
  std::vector<double> breaks{0.0, 0.25, 0.5, 0.75};
  const double scale = params.total() + static_cast<double>(x_hi + y_hi) + 1.0;
  const int levels = std::max(3, static_cast<int>(std::ceil(std::log2(scale))) + 1);
  for (int j = 3; j <= levels; ++j) breaks.push_back(1.0 - std::ldexp(1.0, -j));
  breaks.push_back(1.0);
  return breaks;
}

// Bisects every interval whose worst error exceeds its share of the tolerance.
void refine(std::vector<double>& breaks, const std::vector<double>& interval_error, double tol) {
  const std::size_t n = interval_error.size();
  const double share = 0.5 * tol / static_cast<double>(n);
  const double worst = *std::max_element(interval_error.begin(), interval_error.end());
  std::vector<double> next{breaks.front()};
  for (std::size_t i = 0; i < n; ++i) {
    if (interval_error[i] > share || interval_error[i] == worst) {
      const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
      if (!(mid > breaks[i] && mid < breaks[i + 1]) || breaks[i + 1] - breaks[i] < 1e-13) {
        throw NonConvergenceError("sweep_difference_kernels: interval width underflow");
      }
      next.push_back(mid);
    }
    next.push_back(breaks[i + 1]);
  }
  if (next.size() - 1 > kMaxIntervals) {
    throw NonConvergenceError("sweep_difference_kernels: more than " +
                              std::to_string(kMaxIntervals) + " intervals needed");
  }
  breaks = std::move(next);
}

std::vector<std::int64_t> probe_coordinates(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out{lo};
  const std::int64_t step = std::max<std::int64_t>(1, (hi - lo + 3) / 4);
  for (std::int64_t v = lo + step; v < hi; v += step) out.push_back(v);
  if (hi != lo) out.push_back(hi);
  return out;
}

}  // namespace

KernelSweepResult sweep_difference_kernels(const SkellamParams& params, std::int64_t x_lo,
                                           std::int64_t x_hi, std::int64_t y_lo,
                                           std::int64_t y_hi, double quad_tol,
                                           std::vector<DifferenceKernel>* kernels) {
  if (x_lo < 0 || y_lo < 0 || x_hi < x_lo || y_hi < y_lo) {
    throw std::domain_error("sweep_difference_kernels: invalid state rectangle");
  }
  if (!(quad_tol > 0.0)) {
    throw std::domain_error("sweep_difference_kernels: quad_tol must be positive");
  }
  SweepSettings s{params, quad_tol, 0.01 * quad_tol, 0.0};
  const double steps = static_cast<double>((x_hi - x_lo) + (y_hi - y_lo) + 2);
  s.edge_threshold = s.budget / (4.0 * steps);

  std::vector<double> breaks = initial_breaks(params, x_hi, y_hi);
  KernelSweepResult result;

  // Converge the partition on a handful of representative states first.
  const Rect full{x_lo, x_hi, y_lo, y_hi};
  const bool single = x_lo == x_hi && y_lo == y_hi;
  if (!single) {
    std::vector<Rect> probes;
    for (std::int64_t x : probe_coordinates(x_lo, x_hi)) {
      for (std::int64_t y : probe_coordinates(y_lo, y_hi)) probes.push_back({x, x, y, y});
    }
    for (;;) {
      const PassResult probe = run_pass(s, breaks, probes, false);
      ++result.passes;
      if (probe.worst_error <= quad_tol) break;
      refine(breaks, probe.interval_error, quad_tol);
    }
  }

  for (int pass = 0;; ++pass) {
    PassResult full_pass = run_pass(s, breaks, {full}, kernels != nullptr);
    ++result.passes;
    if (full_pass.worst_error <= quad_tol + 4.0 * s.budget) {
      result.states = std::move(full_pass.states);
      result.intervals = breaks.size() - 1;
      if (kernels) {
        *kernels = std::move(full_pass.kernels);
        for (DifferenceKernel& k : *kernels) k.quad_tol = quad_tol;
      }
      return result;
    }
    if (pass + 1 >= kMaxFullPasses && !single) {
      throw NonConvergenceError("sweep_difference_kernels: tolerance not met after " +
                                std::to_string(kMaxFullPasses) + " full passes");
    }
    refine(breaks, full_pass.interval_error, quad_tol);
  }
}

}  // namespace sks
