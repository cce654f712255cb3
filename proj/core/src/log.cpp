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

#include "polarmeter/log.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace polarmeter {
namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

void default_sink(LogLevel level, std::string_view component,
                  std::string_view message) {
  if (level < LogLevel::kWarning) return;
  std::cerr << "[" << to_string(level) << "] " << component << ": " << message
            << '\n';
}

LogSink& current_sink() {
  static LogSink sink = default_sink;
  return sink;
}

}  // namespace

std::string_view to_string(LogLevel level) {
  switch (level) {
    case LogLevel::kDebug:
      return "debug";
    case LogLevel::kInfo:
      return "info";
    case LogLevel::kWarning:
      return "warning";
    case LogLevel::kError:
      return "error";
  }
  return "unknown";
}

LogSink set_log_sink(LogSink sink) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  LogSink previous = std::move(current_sink());
  current_sink() = sink ? std::move(sink) : LogSink(default_sink);
  return previous;
}

void log(LogLevel level, std::string_view component, std::string_view message) {
  std::lock_guard<std::mutex> lock(sink_mutex());
  current_sink()(level, component, message);
}

}  // namespace polarmeter
