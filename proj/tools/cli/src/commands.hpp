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

// Command implementations behind `polarmeter <command>`.

#ifndef POLARMETER_CLI_SRC_COMMANDS_HPP_
#define POLARMETER_CLI_SRC_COMMANDS_HPP_

#include <ostream>
#include <string>

#include "polarmeter/cli/config.hpp"
#include "polarmeter/cli/output.hpp"

namespace polarmeter::cli {

struct CommandContext {
  const RunConfig& config;
  RunOutputs& outputs;
  std::ostream& out;
  std::string selector;  // analyze/polarize sub-selection, "all" by default
};

// Returns the exit status. Data problems surface as polarmeter::Error.
int run_command(CommandContext& ctx);

}  // namespace polarmeter::cli

#endif  // POLARMETER_CLI_SRC_COMMANDS_HPP_
