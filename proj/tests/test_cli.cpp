// Copyright 2026 The osp-lab Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "osp/cli.hpp"
#include "osp/matrix_games.hpp"

using namespace osp;
namespace fs = std::filesystem;

namespace {

struct ScratchDir {
  fs::path path = fs::temp_directory_path() / ("osp_cli_test_" + std::to_string(::getpid()));
  ScratchDir() { fs::create_directories(path); }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path scratch() {
  static const ScratchDir dir;
  return dir.path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / (name + ".cfg");
  std::ofstream(p) << text;
  return p;
}

int run(const fs::path& cfg, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cmd_run(cfg.string(), out, err);
  if (out_text) *out_text = out.str() + err.str();
  return code;
}

std::string prefix(const std::string& name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("config: serialize and parse round-trip exactly") {
  const std::string text =
      "scenario.id = ocowk_sec8\nscenario.T = 400\nscenario.budgets = 80000, 1600\n"
      "scenario.y_max = 0.1 0.3333333333333333\nalgorithm.id = pd_rftl\n"
      "algorithm.eta1 = 0.001234567890123\nsolver.tol_gap = 1e-9\n"
      "seeds.count = 3\nseeds.master = 42\noutput.path = somewhere/out  # trailing comment\n"
      "output.series = true\nrun.threads = 2\n";
  const RunConfig a = parse_config(text);
  CHECK(a.scenario.T == 400);
  CHECK(a.algorithm.params.at("eta1") == 0.001234567890123);
  const RunConfig b = parse_config(serialize_config(a));
  CHECK(same_config(a, b));
  CHECK(serialize_config(b) == serialize_config(a));

  const RunConfig m = parse_config(
      "scenario.id = constant_matrix\nscenario.T = 10\nscenario.matrix = 1 -1; 0.5 0.25\n"
      "algorithm.id = sp_ftl\nseeds.list = 1 2 3\n");
  CHECK(m.scenario.matrix(1, 0) == 0.5);
  CHECK(same_config(m, parse_config(serialize_config(m))));
}

TEST_CASE("config: malformed inputs are rejected") {
  const std::string base = "scenario.id = iid_quadratic\nscenario.T = 10\nalgorithm.id = ogda\n";
  CHECK_NOTHROW(parse_config(base + "seeds.list = 1\n"));
  CHECK_THROWS_AS(parse_config(base), ConfigError);  // no seeds
  CHECK_THROWS_AS(parse_config(base + "seeds.list = 1\nseeds.list = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "seeds.list = 1\nbogus.key = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "seeds.list = 1\nalgorithm.theta = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "seeds.list = x\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "seeds.list = 1\nscenario.H = 1.5abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "seeds.list = 1\nseeds.count = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "seeds.list = 1\njust some words\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario.id = nope\nscenario.T = 1\nalgorithm.id = ogda\nseeds.list = 1\n"),
                  ConfigError);
}

TEST_CASE("seeds and number formatting") {
  RunConfig c;
  c.seed_count = 4;
  c.master_seed = 7;
  const auto s = resolve_seeds(c);
  REQUIRE(s.size() == 4);
  CHECK(s == resolve_seeds(c));
  CHECK(s[0] != s[1]);
  CHECK(s[0] == Rng::substream(7, 0).next_u64());
  c.seed_list = {5, 9};
  CHECK(resolve_seeds(c) == std::vector<std::uint64_t>{5, 9});

  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(1234567.0) == "1234567");
  CHECK(format_number(-2.5e-20) == "-2.5e-20");
}

TEST_CASE("run: smoke run writes a summary with the specified columns") {
  const auto cfg = write_config("smoke", "scenario.id = theorem6_scenario1\nscenario.T = 200\n"
                                         "algorithm.id = sp_ftl\nseeds.list = 1\noutput.path = " +
                                             prefix("smoke") + "\n");
  std::string text;
  CHECK(run(cfg, &text) == exit_code::kOk);
  CHECK(text.find("sp_regret") != std::string::npos);
  const std::string csv = slurp(prefix("smoke") + "_summary.csv");
  CHECK(csv.rfind("scenario,algorithm,T,seed_count,sp_regret_mean,sp_regret_stderr,ind_x_mean,"
                  "ind_y_mean,hindsight_value,wall_ms",
                  0) == 0);
  CHECK(csv.find("theorem6_scenario1,sp_ftl,200,1,") != std::string::npos);
}

TEST_CASE("run: exit codes") {
  CHECK(run(scratch() / "missing.cfg") == exit_code::kParseError);
  CHECK(run(write_config("bad", "scenario.id = iid_quadratic\n")) == exit_code::kParseError);
  CHECK(run(write_config("odd", "scenario.id = theorem6_scenario1\nscenario.T = 31\n"
                                "algorithm.id = sp_ftl\nseeds.list = 1\noutput.path = " +
                                    prefix("odd") + "\n")) == exit_code::kParseError);
  CHECK(run(write_config("pair", "scenario.id = theorem6_scenario1\nscenario.T = 20\n"
                                 "algorithm.id = pd_rftl\nseeds.list = 1\noutput.path = " +
                                     prefix("pair") + "\n")) == exit_code::kIncompatible);
  std::string diag;
  CHECK(run(write_config("budget", "scenario.id = random_convex_concave\nscenario.T = 20\n"
                                   "algorithm.id = sp_rftl\nsolver.max_iters = 1\n"
                                   "run.gap_budget = 1e-12\nseeds.list = 1\noutput.path = " +
                                       prefix("budget") + "\n"),
            &diag) == exit_code::kNonConvergence);
  CHECK(diag.find("gap") != std::string::npos);
  CHECK(fs::exists(prefix("budget") + "_summary.csv"));
}

TEST_CASE("run: identical configs give byte-identical CSV") {
  for (const std::string name : {"det_q", "det_k"}) {
    const std::string body =
        name == "det_q" ? "scenario.id = iid_quadratic\nscenario.T = 120\nalgorithm.id = ogda\n"
                        : "scenario.id = ocowk_sec8\nscenario.T = 300\nalgorithm.id = pd_rftl\n";
    const auto cfg = write_config(name, body + "seeds.count = 3\nseeds.master = 11\n"
                                               "output.series = true\noutput.series_points = 12\n"
                                               "output.wall_time = false\n"
                                               "output.svg = true\noutput.path = " +
                                        prefix(name) + "\n");
    REQUIRE(run(cfg) == exit_code::kOk);
    const std::string s1 = slurp(prefix(name) + "_summary.csv");
    const std::string r1 = slurp(prefix(name) + "_series.csv");
    REQUIRE(run(cfg) == exit_code::kOk);
    CHECK(s1 == slurp(prefix(name) + "_summary.csv"));
    CHECK(r1 == slurp(prefix(name) + "_series.csv"));
    CHECK(r1.rfind("t,cum_payoff,cum_sp_regret,cum_ind_x,cum_ind_y", 0) == 0);
    CHECK(slurp(prefix(name) + ".svg").find("<polyline") != std::string::npos);
    if (name == "det_k") CHECK(r1.find("cum_reward,budget_frac_1,budget_frac_2,violated") != std::string::npos);
  }
}

TEST_CASE("run: defaults and overrides are recorded in the metadata") {
  const auto cfg = write_config(
      "meta", "scenario.id = random_bilinear\nscenario.T = 64\nscenario.d1 = 2\nscenario.d2 = 2\n"
              "algorithm.id = bandit_omg_rftl\nalgorithm.delta = 0.2\nseeds.list = 3\n"
              "output.path = " + prefix("meta") + "\n");
  REQUIRE(run(cfg) == exit_code::kOk);
  const std::string meta = slurp(prefix("meta") + "_meta.txt");
  CHECK(meta.find("param.delta = 0.2") != std::string::npos);
  CHECK(meta.find("override") != std::string::npos);
  CHECK(meta.find("param.eta") != std::string::npos);
  CHECK(meta.find("T^(1/6)") != std::string::npos);
}

TEST_CASE("oracle-check: passes as shipped, fails on a mutated estimator") {
  std::ostringstream ok;
  CHECK(cmd_oracle_check(ok) == exit_code::kOk);
  oracle::SuiteOptions mutated;
  mutated.estimator = [](double observed, Index i, Index j, const Vec& x, const Vec& y) {
    const Index i2 = (i + 1) % x.size();  // off by one row
    return one_point_estimate(observed, i2, j, x, y).A_hat();
  };
  std::ostringstream bad;
  CHECK(cmd_oracle_check(bad, mutated) == exit_code::kOracleFailure);
  CHECK(bad.str().find("estimator") != std::string::npos);
}

TEST_CASE("listing commands") {
  std::ostringstream s, a;
  CHECK(cmd_list_scenarios(s) == exit_code::kOk);
  CHECK(cmd_list_algorithms(a) == exit_code::kOk);
  CHECK(s.str().find("ocowk_sec8") != std::string::npos);
  CHECK(a.str().find("pd_rftl eta1 eta2") != std::string::npos);
}
