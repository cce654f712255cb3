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

#ifndef POLARMETER_CLI_APP_HPP_
#define POLARMETER_CLI_APP_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace polarmeter::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one `polarmeter` invocation. `args` excludes the program name.
// `jobs_env` is the value of POLARMETER_JOBS, if set. Log records go to
// `err` as JSON lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& jobs_env = std::nullopt);

}  // namespace polarmeter::cli

#endif  // POLARMETER_CLI_APP_HPP_
