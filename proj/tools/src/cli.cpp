#include "sks_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "sks/errors.hpp"
#include "sks/haar_spillover.hpp"
#include "sks/noisy_graph.hpp"
#include "sks/skellam.hpp"
#include "sks/stein.hpp"
#include "sks/tv_metrics.hpp"
#include "sks_cli/report.hpp"

namespace sks::cli {
namespace {

// Raised for a malformed combination of otherwise valid flags.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

constexpr double kDefaultTableTol = 1e-12;
constexpr double kSaturationTol = 1e-6;

Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

// Independent stream per task, derived from the master seed and task index.
std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double concentration_threshold(std::size_t trials) {
  return 3.0 * std::sqrt(std::log(2.0 / 0.001) / (2.0 * static_cast<double>(trials)));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> parse_index_list(const std::string& text, std::size_t n, const char* name) {
  std::vector<int> v(n, 0);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long long idx = 0;
    try {
      idx = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || idx < 0 || static_cast<std::size_t>(idx) >= n) {
      throw std::invalid_argument(std::string("--") + name + ": bad index '" + item + "'");
    }
    v[static_cast<std::size_t>(idx)] = 1;
  }
  return v;
}

struct Common {
  std::string format = "json";
  std::uint64_t seed = kDefaultSeed;
};

struct RateOptions {
  double l1 = -1.0;
  double l2 = -1.0;
  bool extended = false;

  SkellamParams params() const {
    return extended ? SkellamParams::extended(l1, l2) : SkellamParams::strict(l1, l2);
  }
  void describe(Json& j) const {
    j["lambda1"] = l1;
    j["lambda2"] = l2;
    j["extended"] = extended;
  }
};

void add_rates(CLI::App* app, RateOptions& r) {
  app->add_option("--l1", r.l1, "first Poisson rate")->required();
  app->add_option("--l2", r.l2, "second Poisson rate")->required();
  app->add_flag("--extended", r.extended, "allow zero rates");
}

// ---- dist ---------------------------------------------------------------

struct DistOptions {
  RateOptions rates;
  std::int64_t k = 0;
  double tol = kDefaultTableTol;
  std::size_t n = 10;
};

int dist_pmf(const DistOptions& o, Report& rep) {
  const SkellamParams p = o.rates.params();
  rep.command = "dist pmf";
  o.rates.describe(rep.parameters);
  rep.parameters["k"] = o.k;
  rep.result["k"] = o.k;
  rep.result["pmf"] = pmf(p, o.k);
  rep.result["log_pmf"] = number(log_pmf(p, o.k));
  rep.result["cdf"] = cdf(p, o.k);
  return kExitOk;
}

int dist_table(const DistOptions& o, Report& rep) {
  const SkellamParams p = o.rates.params();
  rep.command = "dist table";
  o.rates.describe(rep.parameters);
  rep.tolerances["tail_tol"] = o.tol;
  const IntegerDist d = to_dist(p, o.tol);
  const Moments m = moments(p);
  rep.result["min_support"] = d.min_support();
  rep.result["max_support"] = d.max_support();
  rep.result["window_mass"] = d.window_mass();
  rep.result["tail_mass"] = d.tail_mass();
  rep.result["mean"] = m.mean;
  rep.result["variance"] = m.variance;
  for (std::int64_t k = d.min_support(); k <= d.max_support(); ++k) {
    rep.rows.push_back(Json{{"k", k}, {"pmf", d(k)}});
  }
  return kExitOk;
}

int dist_sample(const DistOptions& o, std::uint64_t seed, Report& rep) {
  const SkellamParams p = o.rates.params();
  rep.command = "dist sample";
  o.rates.describe(rep.parameters);
  rep.parameters["n"] = o.n;
  std::mt19937_64 rng(seed);
  const std::vector<std::int64_t> draws = sample(p, rng, o.n);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    rep.rows.push_back(Json{{"index", i}, {"value", draws[i]}});
  }
  rep.result["count"] = draws.size();
  return kExitOk;
}

// ---- stein --------------------------------------------------------------

struct SteinOptions {
  RateOptions rates;
  double quad_tol = kDefaultQuadTol;
  std::string set = "k>=0";
  std::int64_t x = 0;
  std::int64_t y = 0;
  int order = 0;  // 0: both
  std::vector<int> coords;
  std::int64_t grid = -1;
  bool no_saturation = false;
  double tail_tol = 1e-14;
};

int stein_bounds(const SteinOptions& o, Report& rep) {
  const SkellamParams p = o.rates.params();
  rep.command = "stein bounds";
  o.rates.describe(rep.parameters);
  rep.tolerances["quad_tol"] = o.quad_tol;
  const IntegralBound integral = bound_first_diff_integral(p, o.quad_tol);
  const IntegralBound printed =
      bound_first_diff_integral(p, o.quad_tol, IntegralBoundForm::printed);
  rep.result["first_diff"] = bound_first_diff(p);
  rep.result["second_diff"] = bound_second_diff(p);
  rep.result["first_diff_integral"] = integral.value;
  rep.result["first_diff_integral_error"] = integral.error_estimate;
  rep.result["first_diff_integral_printed_form"] = printed.value;
  rep.result["integral_asymptote"] = number(integral.asymptote);
  rep.result["relaxed_first_diff"] = bound_relaxed(p, 1);
  rep.result["relaxed_second_diff"] = bound_relaxed(p, 2);
  if (p.max_rate() > 0.0) {
    const PriorComparison c = prior_bound_comparison(p.max_rate());
    rep.result["prior_comparison"] = Json{
        {"lambda", p.max_rate()}, {"this_bound", c.this_bound}, {"prior_bound", c.prior}};
  }
  return kExitOk;
}

int stein_solve(const SteinOptions& o, Report& rep) {
  const SkellamParams p = o.rates.params();
  const TestSet f = TestSet::parse(o.set);
  if (o.x < 0 || o.y < 0) throw std::invalid_argument("--x and --y must be nonnegative");
  rep.command = "stein solve";
  o.rates.describe(rep.parameters);
  rep.parameters["set"] = f.to_string();
  rep.parameters["x"] = o.x;
  rep.parameters["y"] = o.y;
  rep.tolerances["quad_tol"] = o.quad_tol;
  const SteinValue h = stein_solution(p, f, {o.x, o.y}, o.quad_tol);
  rep.result["value"] = h.value;
  rep.result["error_estimate"] = h.error_estimate;
  return kExitOk;
}

int stein_factors(const SteinOptions& o, Report& rep) {
  const SkellamParams p = o.rates.params();
  std::vector<DifferenceType> types;
  if (!o.coords.empty()) {
    if (o.order == 0) throw UsageError("--coords requires --order");
    types.push_back(difference_type(o.order, o.coords));
  } else {
    for (DifferenceType t : kAllDifferenceTypes) {
      if (o.order == 0 || order_of(t) == o.order) types.push_back(t);
    }
    if (types.empty()) throw UsageError("--order must be 1 or 2");
  }
  const std::int64_t grid = o.grid >= 0 ? o.grid : default_state_grid(p);
  const std::int64_t swept = o.no_saturation ? grid : 2 * grid;

  rep.command = "stein factors";
  o.rates.describe(rep.parameters);
  rep.parameters["order"] = o.order == 0 ? Json("all") : Json(o.order);
  rep.parameters["grid_max"] = grid;
  rep.parameters["saturation_check"] = !o.no_saturation;
  rep.tolerances["quad_tol"] = o.quad_tol;
  rep.tolerances["saturation_tol"] = kSaturationTol;

  const KernelSweepResult sweep = sweep_difference_kernels(p, 0, swept, 0, swept, o.quad_tol);
  rep.result["states"] = sweep.states.size();
  rep.result["time_intervals"] = sweep.intervals;
  rep.result["passes"] = sweep.passes;

  bool all_dominated = true;
  bool all_saturated = true;
  const IntegralBound integral = bound_first_diff_integral(p, o.quad_tol);
  for (DifferenceType t : types) {
    const int order = order_of(t);
    const SteinFactor sf = max_factor(sweep, t, grid);
    const double closed = order == 1 ? bound_first_diff(p) : bound_second_diff(p);
    const double relaxed = bound_relaxed(p, order);
    // The integral bound is itself a quadrature; its error adds to the slack.
    const double slack = sf.error_bound + (order == 1 ? integral.error_estimate : 0.0);
    double tightest = std::min(closed, relaxed);
    if (order == 1) tightest = std::min(tightest, integral.value);
    const bool dominated = sf.value <= tightest + slack;
    all_dominated = all_dominated && dominated;
    Json row{{"type", to_string(t)},
             {"order", order},
             {"factor", sf.value},
             {"error_bound", sf.error_bound},
             {"argmax_x", sf.argmax.x},
             {"argmax_y", sf.argmax.y},
             {"grid_max", grid},
             {"bound", closed},
             {"relaxed_bound", relaxed},
             {"integral_bound", order == 1 ? Json(integral.value) : Json(nullptr)},
             {"dominated", dominated}};
    if (!o.no_saturation) {
      const SteinFactor wide = max_factor(sweep, t, swept);
      const double delta = wide.value - sf.value;
      const bool saturated = delta < kSaturationTol;
      all_saturated = all_saturated && saturated;
      row["saturation_grid_max"] = swept;
      row["saturation_factor"] = wide.value;
      row["saturation_delta"] = delta;
      row["saturated"] = saturated;
    }
    rep.rows.push_back(std::move(row));
  }
  rep.result["all_dominated"] = all_dominated;
  if (!o.no_saturation) rep.result["all_saturated"] = all_saturated;
  return all_dominated ? kExitOk : kExitViolation;
}

int stein_conjecture(const SteinOptions& o, Report& rep) {
  const SkellamParams p = o.rates.params();
  rep.command = "stein conjecture";
  o.rates.describe(rep.parameters);
  rep.tolerances["tail_tol"] = o.tail_tol;
  const SecondDiffSum s = skellam_second_diff_sum(p, o.tail_tol);
  rep.result["sum"] = s.sum;
  rep.result["tail_bound"] = s.tail_bound;
  rep.result["reference"] = number(s.reference);
  rep.result["ratio"] = s.ratio;
  rep.result["window_lo"] = s.window_lo;
  rep.result["window_hi"] = s.window_hi;
  return kExitOk;
}

// ---- verify -------------------------------------------------------------

struct GraphOptions {
  std::vector<double> homogeneous;
  std::string model;
  std::size_t random = 0;
  std::size_t max_n = 50;
  std::size_t simulate = 0;
};

Json tv_fields(const TvInterval& tv) {
  return Json{{"tv", tv.value}, {"tv_slack", tv.slack}, {"tv_upper", tv.upper()}};
}

int verify_graph(const GraphOptions& o, std::uint64_t seed, Report& rep) {
  const int sources = (o.homogeneous.empty() ? 0 : 1) + (o.model.empty() ? 0 : 1) +
                      (o.random == 0 ? 0 : 1);
  if (sources != 1) throw UsageError("give exactly one of --homogeneous, --model, --random");
  rep.command = "verify graph";

  std::vector<std::pair<std::string, graph::NoisyGraphModel>> models;
  if (!o.homogeneous.empty()) {
    const double n = o.homogeneous[0];
    if (!(n >= 1.0) || n != std::floor(n) || n > 1e9) {
      throw std::invalid_argument("--homogeneous: n must be a positive integer");
    }
    rep.parameters["homogeneous"] = Json{{"n", static_cast<std::int64_t>(n)},
                                         {"p", o.homogeneous[1]},
                                         {"r", o.homogeneous[2]},
                                         {"s", o.homogeneous[3]}};
    models.emplace_back("homogeneous",
                        graph::NoisyGraphModel::homogeneous(static_cast<std::size_t>(n),
                                                            o.homogeneous[1], o.homogeneous[2],
                                                            o.homogeneous[3]));
  } else if (!o.model.empty()) {
    rep.parameters["model"] = o.model;
    models.emplace_back(o.model, graph::NoisyGraphModel::from_json(read_file(o.model)));
  } else {
    rep.parameters["random"] = o.random;
    rep.parameters["max_n"] = o.max_n;
    for (std::size_t i = 0; i < o.random; ++i) {
      std::mt19937_64 rng = task_rng(seed, i);
      models.emplace_back("random-" + std::to_string(i), graph::random_model(rng, o.max_n));
    }
  }
  if (o.simulate > 0) {
    rep.parameters["simulate"] = o.simulate;
    rep.tolerances["concentration_threshold"] = concentration_threshold(o.simulate);
  }

  bool all = true;
  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& [name, model] = models[i];
    const graph::VerifyReport r = graph::verify(model);
    all = all && r.satisfied;
    worst_ratio = std::max(worst_ratio, r.ratio);
    Json row{{"model", name}, {"n", model.size()}, {"lambda1", r.params.lambda1()},
             {"lambda2", r.params.lambda2()}};
    row.update(tv_fields(r.tv));
    row["bound"] = r.bound;
    row["bound_raw_log"] = r.bound_raw_log;
    row["satisfied"] = r.satisfied;
    row["ratio"] = r.ratio;
    if (o.simulate > 0) {
      // Offset keeps simulation streams apart from model-generation streams.
      std::mt19937_64 rng = task_rng(seed, (std::uint64_t{1} << 32) + i);
      const auto draws = graph::simulate(model, rng, o.simulate);
      const TvInterval emp = tv_distance(empirical_dist(draws), graph::edge_difference_dist(model));
      row["empirical_tv"] = emp.value;
    }
    rep.rows.push_back(std::move(row));
  }
  rep.result["models"] = models.size();
  rep.result["all_satisfied"] = all;
  rep.result["max_ratio"] = worst_ratio;
  return all ? kExitOk : kExitViolation;
}

struct HaarOptions {
  std::string signal;
  int scale = 0;
  std::int64_t loc = -1;
  std::string positive;
  std::string negative;
  double p = -1.0;
  int sweep = 0;
  std::size_t random = 0;
  std::size_t simulate = 0;
};

Json haar_row(const haar::VerifyReport& r) {
  Json row{{"true_lambda1", r.true_params.lambda1()},
           {"true_lambda2", r.true_params.lambda2()},
           {"observed_lambda1", r.observed_params.lambda1()},
           {"observed_lambda2", r.observed_params.lambda2()}};
  row.update(tv_fields(r.tv));
  row["bound"] = number(r.bound);
  row["bound_infinite"] = r.bound_infinite;
  row["satisfied"] = r.satisfied;
  row["ratio"] = r.ratio;
  return row;
}

int verify_haar(const HaarOptions& o, std::uint64_t seed, Report& rep) {
  rep.command = "verify haar";
  bool all = true;
  double worst_ratio = 0.0;
  const auto record = [&](Json prefix, const haar::VerifyReport& r) {
    all = all && r.satisfied;
    worst_ratio = std::max(worst_ratio, r.ratio);
    prefix.update(haar_row(r));
    rep.rows.push_back(std::move(prefix));
  };

  if (o.random > 0) {
    if (!o.signal.empty()) throw UsageError("--random and --signal are exclusive");
    if (o.simulate > 0) throw UsageError("--simulate needs a single window, not --random");
    rep.parameters["random"] = o.random;
    for (std::size_t i = 0; i < o.random; ++i) {
      std::mt19937_64 rng = task_rng(seed, i);
      const haar::HaarSpilloverModel m = haar::random_model(rng);
      record(Json{{"model", "random-" + std::to_string(i)},
                  {"n", m.size()},
                  {"p", m.spill_probability()}},
             haar::verify(m));
    }
  } else {
    if (o.signal.empty()) throw UsageError("--signal or --random is required");
    if (!(o.p >= 0.0 && o.p <= 1.0)) throw UsageError("--p in [0, 1] is required");
    std::ifstream in(o.signal);
    if (!in) throw std::invalid_argument("cannot open '" + o.signal + "'");
    const std::vector<double> f = haar::read_signal(in);
    rep.parameters["signal"] = o.signal;
    rep.parameters["n"] = f.size();
    rep.parameters["p"] = o.p;
    if (o.sweep > 0) {
      if (o.simulate > 0) throw UsageError("--simulate needs a single window, not --sweep");
      rep.parameters["max_scale"] = o.sweep;
      for (const haar::SweepRow& row : haar::sweep(f, o.p, o.sweep)) {
        record(Json{{"scale", row.scale}, {"location", row.location}}, row.report);
      }
    } else {
      const bool by_window = o.scale > 0 || o.loc >= 0;
      const bool by_lists = !o.positive.empty() || !o.negative.empty();
      if (by_window == by_lists) throw UsageError("give either --scale/--loc or --P/--N");
      haar::HaarWindows w;
      if (by_window) {
        if (o.scale < 1 || o.loc < 0) throw UsageError("--scale and --loc go together");
        w = haar::haar_windows(f.size(), o.scale, o.loc);
        rep.parameters["scale"] = o.scale;
        rep.parameters["location"] = o.loc;
      } else {
        w.positive = parse_index_list(o.positive, f.size(), "P");
        w.negative = parse_index_list(o.negative, f.size(), "N");
        rep.parameters["P"] = o.positive;
        rep.parameters["N"] = o.negative;
      }
      const haar::HaarSpilloverModel m(f, w, o.p);
      Json prefix = Json::object();
      if (o.simulate > 0) {
        rep.parameters["simulate"] = o.simulate;
        rep.tolerances["concentration_threshold"] = concentration_threshold(o.simulate);
        std::mt19937_64 rng = task_rng(seed, 0);
        const haar::SpilloverSamples s = haar::simulate_spillover(m, rng, o.simulate);
        const double tail = 1e-14;
        prefix["empirical_tv_true"] =
            tv_distance(empirical_dist(s.true_coeffs), to_dist(haar::true_coeff_params(m), tail))
                .value;
        prefix["empirical_tv_observed"] =
            tv_distance(empirical_dist(s.observed_coeffs),
                        to_dist(haar::observed_coeff_params(m), tail))
                .value;
      }
      record(std::move(prefix), haar::verify(m));
    }
  }
  rep.result["models"] = rep.rows.size();
  rep.result["all_satisfied"] = all;
  rep.result["max_ratio"] = worst_ratio;
  return all ? kExitOk : kExitViolation;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Skellam distribution, Stein factors and approximation bounds", "skellam-stein"};
  app.require_subcommand(1);
  Common common;
  const auto add_common = [&](CLI::App* sub, bool sampling) {
    sub->add_option("--format", common.format, "json, csv or human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    if (sampling) sub->add_option("--seed", common.seed, "master seed");
  };

  DistOptions dist;
  CLI::App* dist_cmd = app.add_subcommand("dist", "Skellam pmf, tables and samples");
  dist_cmd->require_subcommand(1);
  CLI::App* pmf_cmd = dist_cmd->add_subcommand("pmf", "probability at one point");
  add_rates(pmf_cmd, dist.rates);
  pmf_cmd->add_option("--k", dist.k, "lattice point")->required();
  add_common(pmf_cmd, false);
  CLI::App* table_cmd = dist_cmd->add_subcommand("table", "pmf over a window");
  add_rates(table_cmd, dist.rates);
  table_cmd->add_option("--tol", dist.tol, "mass allowed outside the window")
      ->capture_default_str();
  add_common(table_cmd, false);
  CLI::App* sample_cmd = dist_cmd->add_subcommand("sample", "draw samples");
  add_rates(sample_cmd, dist.rates);
  sample_cmd->add_option("--n", dist.n, "number of draws")->capture_default_str();
  add_common(sample_cmd, true);

  SteinOptions stein;
  CLI::App* stein_cmd = app.add_subcommand("stein", "Stein solutions, factors and bounds");
  stein_cmd->require_subcommand(1);
  CLI::App* bounds_cmd = stein_cmd->add_subcommand("bounds", "closed-form factor bounds");
  add_rates(bounds_cmd, stein.rates);
  bounds_cmd->add_option("--quad-tol", stein.quad_tol, "absolute quadrature tolerance")->capture_default_str();
  add_common(bounds_cmd, false);
  CLI::App* solve_cmd = stein_cmd->add_subcommand("solve", "Stein solution at one state");
  add_rates(solve_cmd, stein.rates);
  solve_cmd->add_option("--set", stein.set, "k>=a, k<=a, {a,b,...}, all or {}")
      ->capture_default_str();
  solve_cmd->add_option("--x", stein.x, "first state coordinate")->capture_default_str();
  solve_cmd->add_option("--y", stein.y, "second state coordinate")->capture_default_str();
  solve_cmd->add_option("--quad-tol", stein.quad_tol, "absolute quadrature tolerance")->capture_default_str();
  add_common(solve_cmd, false);
  CLI::App* factors_cmd = stein_cmd->add_subcommand("factors", "exact Stein factors on a grid");
  add_rates(factors_cmd, stein.rates);
  factors_cmd->add_option("--order", stein.order, "1 or 2; both when omitted")
      ->check(CLI::IsMember({1, 2}));
  factors_cmd->add_option("--coords", stein.coords, "coordinates, e.g. 1 or 1,2")
      ->delimiter(',');
  factors_cmd->add_option("--grid", stein.grid, "largest state coordinate");
  factors_cmd->add_flag("--no-saturation", stein.no_saturation, "skip the doubled-grid check");
  factors_cmd->add_option("--quad-tol", stein.quad_tol, "absolute quadrature tolerance")->capture_default_str();
  add_common(factors_cmd, false);
  CLI::App* conj_cmd =
      stein_cmd->add_subcommand("conjecture", "sum of absolute pmf second differences");
  add_rates(conj_cmd, stein.rates);
  conj_cmd->add_option("--tol", stein.tail_tol, "tail mass left out of the sum")->capture_default_str();
  add_common(conj_cmd, false);

  GraphOptions graph_opts;
  HaarOptions haar_opts;
  CLI::App* verify_cmd = app.add_subcommand("verify", "check Skellam approximation bounds on application models");
  verify_cmd->require_subcommand(1);
  CLI::App* graph_cmd = verify_cmd->add_subcommand("graph", "noisy graph edge counts");
  graph_cmd->add_option("--homogeneous", graph_opts.homogeneous, "n p r s")->expected(4);
  graph_cmd->add_option("--model", graph_opts.model, "JSON model file");
  graph_cmd->add_option("--random", graph_opts.random, "number of random models");
  graph_cmd->add_option("--max-n", graph_opts.max_n, "largest random model")
      ->capture_default_str();
  graph_cmd->add_option("--simulate", graph_opts.simulate, "Monte Carlo trials per model");
  add_common(graph_cmd, true);
  CLI::App* haar_cmd = verify_cmd->add_subcommand("haar", "Haar coefficients under spillover");
  haar_cmd->add_option("--signal", haar_opts.signal, "intensity file");
  haar_cmd->add_option("--scale", haar_opts.scale, "Haar scale j, window width 2^j");
  haar_cmd->add_option("--loc", haar_opts.loc, "window index at that scale");
  haar_cmd->add_option("--P", haar_opts.positive, "positive indices, comma separated");
  haar_cmd->add_option("--N", haar_opts.negative, "negative indices, comma separated");
  haar_cmd->add_option("--p", haar_opts.p, "spillover probability");
  haar_cmd->add_option("--sweep", haar_opts.sweep, "verify all windows up to this scale");
  haar_cmd->add_option("--random", haar_opts.random, "number of random models");
  haar_cmd->add_option("--simulate", haar_opts.simulate, "Monte Carlo trials");
  add_common(haar_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Report rep;
  int code = kExitOk;
  try {
    const Format format = parse_format(common.format);
    rep.seed = common.seed;
    if (pmf_cmd->parsed()) code = dist_pmf(dist, rep);
    else if (table_cmd->parsed()) code = dist_table(dist, rep);
    else if (sample_cmd->parsed()) code = dist_sample(dist, common.seed, rep);
    else if (bounds_cmd->parsed()) code = stein_bounds(stein, rep);
    else if (solve_cmd->parsed()) code = stein_solve(stein, rep);
    else if (factors_cmd->parsed()) code = stein_factors(stein, rep);
    else if (conj_cmd->parsed()) code = stein_conjecture(stein, rep);
    else if (graph_cmd->parsed()) code = verify_graph(graph_opts, common.seed, rep);
    else if (haar_cmd->parsed()) code = verify_haar(haar_opts, common.seed, rep);
    render(rep, format, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // Numerical failures (non-convergence, resource caps) are reported as
    // input errors: the request cannot be served at the given size/tolerance.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return code;
}

}  // namespace sks::cli
