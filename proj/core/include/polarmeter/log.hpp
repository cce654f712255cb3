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

#ifndef POLARMETER_LOG_HPP_
#define POLARMETER_LOG_HPP_

#include <functional>
#include <string_view>

namespace polarmeter {

enum class LogLevel { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3 };

std::string_view to_string(LogLevel level);

using LogSink = std::function<void(LogLevel, std::string_view component,
                                   std::string_view message)>;

// Installs a process-wide sink and returns the previous one. The default sink
// writes warnings and errors to stderr. Sinks are called under a mutex.
LogSink set_log_sink(LogSink sink);

void log(LogLevel level, std::string_view component, std::string_view message);

inline void log_warning(std::string_view component, std::string_view message) {
  log(LogLevel::kWarning, component, message);
}

}  // namespace polarmeter

#endif  // POLARMETER_LOG_HPP_
