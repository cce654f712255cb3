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

#ifndef POLARMETER_ERROR_HPP_
#define POLARMETER_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polarmeter {

// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line()` is 1-based, or 0 when not line oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Input that parsed but violates a data invariant. `line()` is 0 when the
// violation is not tied to an input line.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message) : Error(message) {}
  ValidationError(std::size_t line, const std::string& message)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

// A caller broke an operation's precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace polarmeter

#endif  // POLARMETER_ERROR_HPP_
