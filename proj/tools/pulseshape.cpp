// Copyright 2026 The pulseshape Authors
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

// Command-line front end: `pulseshape run <config.json>` and
// `pulseshape list [--format=text|json]`.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pulseshape/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Pulse-shaping and cross-resonance experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a JSON config");
  run_cmd->add_option("config", config_path, "Path to the JSON config")->required();

  std::string format = "text";
  auto* list_cmd = app.add_subcommand("list", "List registered experiments and their parameters");
  list_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pulseshape::cli::kExitConfigError;
  }

  if (run_cmd->parsed()) return pulseshape::cli::run(config_path, std::cout, std::cerr);

  if (format == "json") {
    std::cout << pulseshape::cli::list_experiments_json().dump(2) << '\n';
  } else {
    std::cout << pulseshape::cli::list_experiments_text();
  }
  return pulseshape::cli::kExitOk;
}
