// Copyright 2026 The Polarmeter Authors
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

#ifndef POLARMETER_CLI_CONFIG_HPP_
#define POLARMETER_CLI_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace polarmeter::cli {

// Bad command line or configuration; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParamType { kString, kInt, kDouble, kBool, kList };

struct ParamSpec {
  std::string key;   // config-file key, snake_case
  std::string flag;  // command-line flag without dashes
  ParamType type = ParamType::kString;
  nlohmann::json default_value;  // null = no default
  std::string help;
  std::vector<std::string> choices;  // string params only; empty = free
  std::optional<double> min;         // numeric params only
  std::optional<double> max;
};

// Every parameter the tool knows, in a stable order.
const std::vector<ParamSpec>& param_registry();
const ParamSpec* find_param(std::string_view key);

// Parameters each command accepts, in registry order. The shared ones
// (config, out_dir, format, seed, jobs, log_level) are included.
std::vector<const ParamSpec*> params_for(std::string_view command);

const std::vector<std::string>& command_names();

// Resolved parameters for one run.
class RunConfig {
 public:
  RunConfig(std::string command, nlohmann::ordered_json values)
      : command_(std::move(command)), values_(std::move(values)) {}

  const std::string& command() const { return command_; }
  const nlohmann::ordered_json& values() const { return values_; }

  bool has(std::string_view key) const;
  std::string str(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  double number(std::string_view key) const;
  bool flag(std::string_view key) const;
  std::vector<std::string> list(std::string_view key) const;
  std::string required_str(std::string_view key) const;  // UsageError if unset

 private:
  std::string command_;
  nlohmann::ordered_json values_;
};

// Layers defaults < config file < POLARMETER_JOBS < flags. `flags` holds the
// raw text of every flag given on the command line, keyed by config key.
// Throws UsageError on unknown config keys, malformed values or values
// outside their documented range.
RunConfig resolve_config(std::string_view command,
                         const std::map<std::string, std::string>& flags,
                         const std::optional<std::string>& jobs_env);

}  // namespace polarmeter::cli

#endif  // POLARMETER_CLI_CONFIG_HPP_
