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

#ifndef POLARMETER_CSV_HPP_
#define POLARMETER_CSV_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace polarmeter::csv {

// Splits one CSV record (RFC 4180 quoting, no embedded newlines). A trailing
// '\r' is dropped. Throws ParseError on an unterminated quote.
std::vector<std::string> split_record(std::string_view line);

// Quotes a field when it contains ',', '"', '\r' or '\n'.
std::string escape(std::string_view field);

// Shortest text that round-trips to the same double.
std::string format_number(double value);

// Fixed-point with `decimals` digits; "-0.00" is normalized to "0.00".
std::string format_fixed(double value, int decimals);

}  // namespace polarmeter::csv

#endif  // POLARMETER_CSV_HPP_
