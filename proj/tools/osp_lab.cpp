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

// osp_lab: run experiments from config files and self-check the library.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "osp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"osp_lab: online saddle-point experiments"};
  app.require_subcommand(1);

  std::string config;
  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config, "config file (flat key = value)")->required();
  auto* oracle = app.add_subcommand("oracle-check", "compare the library against brute-force oracles");
  auto* scen = app.add_subcommand("list-scenarios", "print scenario ids");
  auto* algs = app.add_subcommand("list-algorithms", "print algorithm ids and their parameters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : osp::exit_code::kParseError;
  }

  if (*run) return osp::cmd_run(config, std::cout, std::cerr);
  if (*oracle) return osp::cmd_oracle_check(std::cout);
  if (*scen) return osp::cmd_list_scenarios(std::cout);
  if (*algs) return osp::cmd_list_algorithms(std::cout);
  return osp::exit_code::kParseError;
}
