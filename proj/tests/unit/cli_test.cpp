#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sks_cli/cli.hpp"

namespace {

using Json = nlohmann::json;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::vector<const char*> argv{"skellam-stein"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = sks::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell, capturing stdout and the exit code.
CliRun run_binary(const std::string& args) {
  const std::string cmd = std::string(SKS_CLI_BINARY) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  CliRun r;
  if (!pipe) return {-1, "", ""};
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name) { return std::string(SKS_TEST_DATA) + "/" + name; }

TEST(Cli, DistPmf) {
  const CliRun r = run({"dist", "pmf", "--l1", "1", "--l2", "1", "--k", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["result"]["pmf"].get<double>(), 0.30850832255367104, 1e-15);
  EXPECT_EQ(j["tool"], "skellam-stein");
  EXPECT_EQ(j["command"], "dist pmf");
  EXPECT_TRUE(j.contains("version"));
  EXPECT_TRUE(j.contains("seed"));
  EXPECT_EQ(j["parameters"]["lambda1"], 1.0);
}

TEST(Cli, DistTableMass) {
  const CliRun r = run({"dist", "table", "--l1", "1", "--l2", "1", "--tol", "1e-10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  double s = 0.0;
  for (const auto& row : j["rows"]) s += row["pmf"].get<double>();
  EXPECT_GE(s, 1.0 - 1e-10);
  EXPECT_EQ(j["tolerances"]["tail_tol"], 1e-10);
}

TEST(Cli, DistSampleDeterministic) {
  const std::vector<std::string> args{"dist", "sample", "--l1", "1", "--l2", "1", "--n", "5",
                                      "--seed", "7"};
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(Json::parse(a.out)["seed"], 7);
  const CliRun c = run_binary("dist sample --l1 1 --l2 1 --n 5 --seed 7");
  const CliRun d = run_binary("dist sample --l1 1 --l2 1 --n 5 --seed 7");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, d.out);
  EXPECT_EQ(c.out, a.out);
}

TEST(Cli, DefaultSeedIsVisible) {
  const CliRun r = run({"dist", "sample", "--l1", "2", "--l2", "1", "--n", "3"});
  EXPECT_EQ(Json::parse(r.out)["seed"], sks::cli::kDefaultSeed);
}

TEST(Cli, SteinBounds) {
  const CliRun r = run({"stein", "bounds", "--l1", "2", "--l2", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["result"]["first_diff"].get<double>(), 0.6065306597126334, 1e-15);
  EXPECT_EQ(j["result"]["prior_comparison"]["prior_bound"], 40.0);
}

TEST(Cli, SteinSolveConverges) {
  const CliRun a = run({"stein", "solve", "--l1", "1", "--l2", "1", "--set", "k>=0", "--x", "0",
                     "--y", "0", "--quad-tol", "1e-8"});
  const CliRun b = run({"stein", "solve", "--l1", "1", "--l2", "1", "--set", "k>=0", "--x", "0",
                     "--y", "0", "--quad-tol", "1e-11"});
  ASSERT_EQ(a.code, 0) << a.err;
  const double va = Json::parse(a.out)["result"]["value"].get<double>();
  const double vb = Json::parse(b.out)["result"]["value"].get<double>();
  EXPECT_TRUE(std::isfinite(va));
  EXPECT_NEAR(va, vb, 1e-7);
}

TEST(Cli, SteinSolveBadSet) {
  EXPECT_EQ(run({"stein", "solve", "--l1", "1", "--l2", "1", "--set", "k=>0"}).code, 2);
}

TEST(Cli, SteinFactorsDominated) {
  const CliRun r = run({"stein", "factors", "--l1", "10", "--l2", "10", "--order", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["result"]["all_dominated"].get<bool>());
  EXPECT_TRUE(j["result"]["all_saturated"].get<bool>());
  ASSERT_EQ(j["rows"].size(), 3u);
  for (const auto& row : j["rows"]) EXPECT_LE(row["factor"].get<double>(), row["bound"].get<double>());
}

TEST(Cli, SteinFactorsCoordsNeedOrder) {
  EXPECT_EQ(run({"stein", "factors", "--l1", "1", "--l2", "1", "--coords", "1"}).code, 2);
}

TEST(Cli, SteinConjecture) {
  const CliRun r = run({"stein", "conjecture", "--l1", "5", "--l2", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_DOUBLE_EQ(Json::parse(r.out)["result"]["reference"].get<double>(), 0.1);
}

TEST(Cli, VerifyGraphHomogeneous) {
  const CliRun r = run({"verify", "graph", "--homogeneous", "100", "0.3", "0.1", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["rows"][0]["satisfied"].get<bool>());
  const CliRun f = run({"verify", "graph", "--model", data("homogeneous_model.json")});
  EXPECT_EQ(f.code, 0) << f.err;
  EXPECT_EQ(Json::parse(f.out)["rows"][0]["bound"], Json::parse(r.out)["rows"][0]["bound"]);
}

TEST(Cli, VerifyGraphModelFiles) {
  EXPECT_EQ(run({"verify", "graph", "--model", data("two_pair_model.json")}).code, 0);
  EXPECT_EQ(run({"verify", "graph", "--model", data("mismatched_model.json")}).code, 2);
  EXPECT_EQ(run({"verify", "graph", "--model", data("missing.json")}).code, 2);
  EXPECT_EQ(run_binary("verify graph --model " + data("mismatched_model.json")).code, 2);
}

TEST(Cli, VerifyGraphRandom) {
  const CliRun a = run({"verify", "graph", "--random", "20", "--seed", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(Json::parse(a.out)["rows"].size(), 20u);
  EXPECT_EQ(a.out, run({"verify", "graph", "--random", "20", "--seed", "3"}).out);
}

TEST(Cli, VerifyHaar) {
  const CliRun r = run({"verify", "haar", "--signal", data("ramp_signal.txt"), "--scale", "1",
                     "--loc", "0", "--p", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json row = Json::parse(r.out)["rows"][0];
  EXPECT_EQ(row["tv"], 0.0);
  EXPECT_EQ(row["bound"], 0.0);
  const CliRun l = run({"verify", "haar", "--signal", data("ramp_signal.txt"), "--P", "0,1", "--N",
                     "2,3", "--p", "0.1"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_NEAR(Json::parse(l.out)["rows"][0]["bound"].get<double>(), 0.16210213737276048, 1e-15);
  EXPECT_EQ(run({"verify", "haar", "--signal", data("ramp_signal.txt"), "--P", "0,9", "--N", "2",
                 "--p", "0.1"})
                .code,
            2);
  EXPECT_EQ(run({"verify", "haar", "--signal", data("ramp_signal.txt"), "--p", "0.1"}).code, 2);
}

TEST(Cli, VerifyHaarSweepAndRandom) {
  const CliRun s = run({"verify", "haar", "--signal", data("ramp_signal.txt"), "--sweep", "2",
                     "--p", "0.3", "--format", "csv"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(std::count(s.out.begin(), s.out.end(), '\n'), 1 + 2 + 1);
  const CliRun r = run({"verify", "haar", "--random", "15", "--seed", "5"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"verify", "haar", "--random", "2", "--simulate", "100"}).code, 2);
  EXPECT_EQ(run({"verify", "haar", "--signal", data("ramp_signal.txt"), "--sweep", "1", "--p",
                 "0.1", "--simulate", "100"})
                .code,
            2);
}

TEST(Cli, CsvAgreesWithJson) {
  const std::vector<std::string> base{"verify", "graph", "--random", "6", "--seed", "8"};
  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv"});
  const Json j = Json::parse(run(base).out);
  std::istringstream csv(run(csv_args).out);
  std::string header;
  std::getline(csv, header);
  std::vector<std::string> cols;
  {
    std::stringstream hs(header);
    std::string c;
    while (std::getline(hs, c, ',')) cols.push_back(c);
  }
  std::string line;
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    std::stringstream ls(line);
    std::string cell;
    for (const std::string& col : cols) {
      std::getline(ls, cell, ',');
      const Json& v = j["rows"][i][col];
      if (v.is_number_float()) {
        const double a = v.get<double>();
        const double b = std::stod(cell);
        EXPECT_NEAR(a, b, 1e-15 * std::max(1.0, std::abs(a))) << col;
      } else if (v.is_boolean()) {
        EXPECT_EQ(cell, v.get<bool>() ? "true" : "false");
      }
    }
    ++i;
  }
  EXPECT_EQ(i, 6u);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"dist"}).code, 2);
  EXPECT_EQ(run({"dist", "pmf", "--l1", "1"}).code, 2);
  EXPECT_EQ(run({"dist", "pmf", "--l1", "-1", "--l2", "1", "--k", "0"}).code, 2);
  EXPECT_EQ(run({"dist", "pmf", "--l1", "0", "--l2", "1", "--k", "0"}).code, 2);
  EXPECT_EQ(run({"dist", "pmf", "--l1", "0", "--l2", "1", "--k", "0", "--extended"}).code, 0);
  EXPECT_EQ(run({"dist", "pmf", "--l1", "1", "--l2", "1", "--k", "0", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"verify", "graph"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, HumanFormatMentionsEveryResult) {
  const CliRun r = run({"stein", "bounds", "--l1", "3", "--l2", "3", "--format", "human"});
  ASSERT_EQ(r.code, 0);
  for (const char* key : {"first_diff", "second_diff", "first_diff_integral", "relaxed_first_diff",
                          "relaxed_second_diff", "prior_comparison.prior_bound"}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  }
}

}  // namespace
