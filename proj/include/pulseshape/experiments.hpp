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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pulseshape/numkit.hpp"

namespace pulseshape::cli {

/// Invalid run configuration; `key` names the offending entry when known.
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : ValidationError(key.empty() ? message : key + ": " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// How a parameter converts under the "MHz-ns" unit convention. Defaults are
/// always stated in internal units (rad/ns, ns, GHz) and never converted.
enum class ParamKind {
  kAngularFrequency,  // MHz -> 2 pi f 1e-3 rad/ns
  kLinearFrequency,   // MHz -> f 1e-3 GHz
  kTime,              // ns
  kNumber,            // dimensionless, unchanged
  kInteger,
  kString,
};

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::kNumber;
  nlohmann::json default_value;
  std::string description;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
};

const std::vector<ExperimentInfo>& experiment_registry();

std::string list_experiments_text();
nlohmann::json list_experiments_json();

/// Exit codes of `run`.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

/// Runs the experiment described by a parsed config. Returns the manifest;
/// throws ConfigError / ValidationError / NumericalError on failure.
nlohmann::json run_experiment(const nlohmann::json& config);

/// Reads `config_path`, runs it, prints a one-line JSON status to `out` on
/// success or a JSON error report to `err`, and returns the exit code.
int run(const std::string& config_path, std::ostream& out, std::ostream& err);

}  // namespace pulseshape::cli
