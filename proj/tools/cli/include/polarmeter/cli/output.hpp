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

#ifndef POLARMETER_CLI_OUTPUT_HPP_
#define POLARMETER_CLI_OUTPUT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polarmeter/cli/config.hpp"

namespace polarmeter::cli {

// One table cell: its CSV text and its JSON value.
struct Cell {
  std::string text;
  nlohmann::ordered_json value;
};

Cell text_cell(std::string text);
Cell int_cell(std::int64_t value);
Cell number_cell(double value);  // shortest round-trip text
Cell fixed_cell(double value, int decimals);
Cell optional_number(const std::optional<double>& value);
Cell bool_cell(bool value);
Cell empty_cell();

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

// CSV with a header row and '\n' endings, or a JSON array of objects keyed
// by the header.
std::string render_csv(const Table& table);
std::string render_json(const Table& table);

// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_bytes(std::string_view bytes);

// Tracks what a run reads and writes, and emits manifest.json.
class RunOutputs {
 public:
  RunOutputs(std::filesystem::path out_dir, std::string format);

  const std::filesystem::path& out_dir() const { return out_dir_; }

  // Writes `<stem>.csv` or `<stem>.json` under the output directory.
  std::filesystem::path write_table(std::string_view stem, const Table& table);
  // Writes an arbitrary file. Relative paths are taken as given.
  void write_file(const std::filesystem::path& path, std::string_view content);
  void add_input(const std::filesystem::path& path);

  // manifest.json: tool, version, command, seed, resolved config, and the
  // inputs and outputs with their digests. Paths under the output
  // directory are recorded relative to it.
  std::filesystem::path write_manifest(const RunConfig& config) const;

  const std::vector<std::filesystem::path>& outputs() const { return outputs_; }

 private:
  std::filesystem::path out_dir_;
  std::string format_;
  std::vector<std::filesystem::path> inputs_;
  std::vector<std::filesystem::path> outputs_;
};

std::string_view tool_version();

}  // namespace polarmeter::cli

#endif  // POLARMETER_CLI_OUTPUT_HPP_
