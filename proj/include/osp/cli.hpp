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

#pragma once

// Run configuration, output writers and the osp_lab commands.
//
// Config files are flat `key = value` lines with dotted section prefixes;
// `#` starts a comment. Vectors are whitespace or comma separated, matrix
// rows are separated by `;`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "osp/harness.hpp"
#include "osp/oracles.hpp"

namespace osp {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  ScenarioSpec scenario;
  AlgorithmConfig algorithm;
  // Either an explicit list or count + master seed.
  std::vector<std::uint64_t> seed_list;
  long seed_count = 0;
  std::uint64_t master_seed = 0;

  std::string output_path = "osp_lab_out";  // file prefix
  bool emit_series = false;
  long series_points = 100;
  bool emit_svg = false;
  bool wall_time = true;  // false writes wall_ms = 0 for byte-stable output
  int threads = 0;
  double gap_budget = 1e-2;  // worst solver gap tolerated before exit 4
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);
bool same_config(const RunConfig& a, const RunConfig& b);

std::vector<std::uint64_t> resolve_seeds(const RunConfig& cfg);

// 12 significant digits, C locale.
std::string format_number(double v);

void write_summary_csv(std::ostream& os, const ExperimentResult& res, bool wall_time);
// Mean over seeds at every checkpoint. Knapsack runs need traces.
void write_series_csv(std::ostream& os, const ExperimentResult& res);
void write_metadata(std::ostream& os, const RunConfig& cfg, const ExperimentResult& res);
void write_series_svg(std::ostream& os, const ExperimentResult& res);

namespace exit_code {
constexpr int kOk = 0;
constexpr int kOracleFailure = 1;
constexpr int kParseError = 2;
constexpr int kIncompatible = 3;
constexpr int kNonConvergence = 4;
}  // namespace exit_code

int cmd_run(const std::string& config_path, std::ostream& out, std::ostream& err);
// Options let tests inject a mutated estimator.
int cmd_oracle_check(std::ostream& out, const oracle::SuiteOptions& opt = {});
int cmd_list_scenarios(std::ostream& out);
int cmd_list_algorithms(std::ostream& out);

}  // namespace osp
