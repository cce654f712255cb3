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

#include "polarmeter/cli/output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "polarmeter/csv.hpp"
#include "polarmeter/error.hpp"

#ifndef POLARMETER_VERSION
#define POLARMETER_VERSION "0.0.0"
#endif

namespace polarmeter::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

Cell text_cell(std::string text) {
  ordered_json v = text;
  return {std::move(text), std::move(v)};
}

Cell int_cell(std::int64_t value) { return {std::to_string(value), value}; }

Cell number_cell(double value) { return {csv::format_number(value), value}; }

Cell fixed_cell(double value, int decimals) {
  const std::string text = csv::format_fixed(value, decimals);
  return {text, std::stod(text)};
}

Cell optional_number(const std::optional<double>& value) {
  return value ? number_cell(*value) : empty_cell();
}

Cell bool_cell(bool value) { return {value ? "true" : "false", value}; }

Cell empty_cell() { return {"", nullptr}; }

std::string render_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += csv::escape(table.header[i]);
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv::escape(row[i].text);
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Table& table) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.header.size(); ++i) {
      obj[table.header[i]] = row[i].value;
    }
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

std::string sha256_bytes(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int size = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &size, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static const char* kHex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < size; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_bytes(buf.str());
}

RunOutputs::RunOutputs(fs::path out_dir, std::string format)
    : out_dir_(std::move(out_dir)), format_(std::move(format)) {}

fs::path RunOutputs::write_table(std::string_view stem, const Table& table) {
  const bool json = format_ == "json";
  const fs::path path = out_dir_ / (std::string(stem) + (json ? ".json" : ".csv"));
  write_file(path, json ? render_json(table) : render_csv(table));
  return path;
}

void RunOutputs::write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error("cannot write '" + path.string() + "'");
  if (std::find(outputs_.begin(), outputs_.end(), path) == outputs_.end()) {
    outputs_.push_back(path);
  }
}

void RunOutputs::add_input(const fs::path& path) {
  if (std::find(inputs_.begin(), inputs_.end(), path) == inputs_.end()) {
    inputs_.push_back(path);
  }
}

fs::path RunOutputs::write_manifest(const RunConfig& config) const {
  const auto describe = [&](const fs::path& path) {
    ordered_json entry;
    const fs::path rel = path.lexically_relative(out_dir_);
    const bool inside = !rel.empty() && *rel.begin() != "..";
    entry["path"] = (inside ? rel : path).generic_string();
    entry["bytes"] = fs::file_size(path);
    entry["sha256"] = sha256_file(path);
    return entry;
  };
  ordered_json manifest;
  manifest["tool"] = "polarmeter";
  manifest["version"] = tool_version();
  manifest["command"] = config.command();
  manifest["seed"] = config.integer("seed");
  manifest["config"] = config.values();
  manifest["inputs"] = ordered_json::array();
  for (const auto& p : inputs_) manifest["inputs"].push_back(describe(p));
  manifest["outputs"] = ordered_json::array();
  for (const auto& p : outputs_) manifest["outputs"].push_back(describe(p));

  const fs::path path = out_dir_ / "manifest.json";
  fs::create_directories(out_dir_);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return path;
}

std::string_view tool_version() { return POLARMETER_VERSION; }

}  // namespace polarmeter::cli
