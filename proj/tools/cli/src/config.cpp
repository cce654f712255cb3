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

#include "polarmeter/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "polarmeter/corpus.hpp"
#include "polarmeter/error.hpp"
#include "polarmeter/lexical.hpp"

namespace polarmeter::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

ParamSpec param(std::string key, ParamType type, json default_value, std::string help) {
  ParamSpec p;
  p.flag = key;
  std::replace(p.flag.begin(), p.flag.end(), '_', '-');
  p.key = std::move(key);
  p.type = type;
  p.default_value = std::move(default_value);
  p.help = std::move(help);
  return p;
}

ParamSpec choice(std::string key, std::string default_value, std::vector<std::string> choices,
                 std::string help) {
  ParamSpec p = param(std::move(key), ParamType::kString, default_value, std::move(help));
  p.choices = std::move(choices);
  return p;
}

ParamSpec ranged(ParamSpec p, std::optional<double> min, std::optional<double> max = {}) {
  p.min = min;
  p.max = max;
  return p;
}

std::vector<ParamSpec> build_registry() {
  using T = ParamType;
  const json none;
  return {
      // Shared by every command.
      param("config", T::kString, none, "JSON file of parameter values"),
      param("out_dir", T::kString, "polarmeter-out", "directory for outputs and manifest.json"),
      choice("format", "csv", {"csv", "json"}, "table output format"),
      ranged(param("seed", T::kInt, 7, "master random seed"), 0),
      ranged(param("jobs", T::kInt, 1, "worker threads (env POLARMETER_JOBS)"), 1, 256),
      choice("log_level", "info", {"debug", "info", "warning", "error"}, "minimum log level"),
      // Inputs and label selection.
      param("in", T::kString, none, "input JSONL file"),
      param("source", T::kString, "adjudicated", "label source: adjudicated or annotator:<id>"),
      param("min_year", T::kInt, 1900, "earliest valid article year"),
      param("max_year", T::kInt, 2100, "latest valid article year"),
      param("exclude_irrelevant", T::kBool, false, "drop irrelevant labels before pairing"),
      choice("dimension", "economic",
             {"economic", "social", "foreign", "econ", "fgn", "all"}, "dimension to analyze"),
      param("dimensions", T::kList, json::array({"economic", "social", "foreign"}),
            "comma-separated dimensions"),
      // Analytics.
      choice("denominator", "labeled", {"labeled", "all"}, "paragraph co-occurrence denominator"),
      param("strict_divergence", T::kBool, false, "divergent articles need both -1 and +1"),
      // Lexical models.
      ranged(param("top_k", T::kInt, 5, "terms per side"), 0),
      ranged(param("l2", T::kDouble, 1.0, "L2 strength"), 0),
      ranged(param("lr", T::kDouble, 0.1, "learning rate"), 1e-12),
      ranged(param("epochs", T::kInt, 500, "full-batch epochs"), 0),
      ranged(param("min_df", T::kInt, 2, "minimum document frequency"), 1),
      param("binary_features", T::kBool, false, "term presence instead of counts"),
      ranged(param("gamma", T::kDouble, 2.0, "focal loss gamma (0 = cross entropy)"), 0),
      choice("class_weights", "auto", {"auto", "none"}, "inverse-frequency class weights"),
      param("split", T::kString, "80,10,10", "train,dev,test percentages"),
      // Polarization.
      param("bias_file", T::kString, none, "CSV outlet,site,rating"),
      ranged(param("bin_width", T::kInt, 4, "years per bin"), 1),
      param("bin_anchor", T::kInt, none, "year bins are aligned to (default: first year)"),
      ranged(param("tau", T::kDouble, 0.1, "bias group threshold"), 1e-12),
      ranged(param("bc_threshold", T::kDouble, 5.0 / 9.0, "bimodality threshold"), 0, 1),
      ranged(param("bias_epsilon", T::kDouble, 1e-3, "near-zero bias guard"), 0),
      ranged(param("min_pairs", T::kInt, 3, "minimum pairs for Pearson r"), 2),
      choice("moments", "sample", {"sample", "population"}, "skewness/kurtosis estimator"),
      param("pooled", T::kBool, false, "pool articles per bias group for sorting"),
      // Curation and topic models.
      param("out", T::kString, none, "output JSONL file"),
      param("audit", T::kString, none, "curation audit CSV"),
      param("include", T::kList, json::array(), "terms every kept article must contain"),
      param("exclude", T::kList, json::array(), "phrases that reject an article"),
      ranged(param("topics", T::kInt, 50, "LDA topic count"), 1),
      ranged(param("iters", T::kInt, 1000, "Gibbs iterations"), 1),
      ranged(param("alpha", T::kDouble, none, "document-topic prior (default 50/topics)"), 1e-12),
      ranged(param("beta", T::kDouble, 0.01, "topic-word prior"), 1e-12),
      param("save", T::kString, none, "model JSON path"),
      ranged(param("top_words", T::kInt, 10, "words listed per topic"), 0),
      param("model", T::kString, none, "LDA model JSON"),
      ranged(param("window", T::kInt, 2, "sentences per tiling block"), 1),
      ranged(param("inference_iters", T::kInt, 100, "Gibbs inference iterations"), 1),
      ranged(param("modal_window", T::kInt, 20, "final iterations for the modal topic"), 1),
      ranged(param("threshold_multiplier", T::kDouble, 0.5, "depth threshold multiplier"), 0),
      ranged(param("max_segments", T::kInt, 0, "segment cap (0 = none)"), 0),
  };
}

const std::map<std::string, std::vector<std::string>, std::less<>>& command_params() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> kParams = {
      {"ingest", {"in", "out", "min_year", "max_year"}},
      {"validate", {"in", "min_year", "max_year"}},
      {"agreement", {"in", "exclude_irrelevant", "dimensions"}},
      {"analyze", {"in", "source", "denominator", "strict_divergence"}},
      {"lexical",
       {"in", "source", "dimension", "top_k", "l2", "lr", "epochs", "min_df", "binary_features"}},
      {"classify",
       {"in", "source", "dimension", "gamma", "class_weights", "split", "l2", "lr", "epochs",
        "min_df", "binary_features"}},
      {"polarize",
       {"in", "source", "bias_file", "bin_width", "bin_anchor", "tau", "bc_threshold",
        "bias_epsilon", "min_pairs", "moments", "pooled", "dimensions"}},
      {"curate", {"in", "out", "audit", "include", "exclude"}},
      {"lda", {"in", "topics", "iters", "alpha", "beta", "save", "top_words"}},
      {"segment",
       {"in", "out", "model", "window", "inference_iters", "modal_window",
        "threshold_multiplier", "max_segments"}},
  };
  return kParams;
}

const std::set<std::string>& shared_keys() {
  static const std::set<std::string> kShared = {"config", "out_dir", "format",
                                                "seed",   "jobs",    "log_level"};
  return kShared;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    std::string item(text.substr(pos, end - pos));
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    pos = end + 1;
  }
  return out;
}

json parse_flag_value(const ParamSpec& p, const std::string& text) {
  const auto bad = [&] {
    return UsageError("invalid value '" + text + "' for --" + p.flag);
  };
  switch (p.type) {
    case ParamType::kString:
      return text;
    case ParamType::kInt: {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
      if (ec != std::errc() || ptr != text.data() + text.size()) throw bad();
      return v;
    }
    case ParamType::kDouble: {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(text, &used);
      } catch (const std::exception&) {
        throw bad();
      }
      if (used != text.size() || !std::isfinite(v)) throw bad();
      return v;
    }
    case ParamType::kBool:
      if (text == "true" || text == "1" || text.empty()) return true;
      if (text == "false" || text == "0") return false;
      throw bad();
    case ParamType::kList:
      return split_list(text);
  }
  throw bad();
}

// Coerces a config-file value to the parameter's type.
json coerce_config_value(const ParamSpec& p, const json& v) {
  const auto bad = [&] {
    return UsageError("config key '" + p.key + "' has the wrong type");
  };
  switch (p.type) {
    case ParamType::kString:
      if (!v.is_string()) throw bad();
      return v;
    case ParamType::kInt:
      if (!v.is_number_integer()) throw bad();
      return v.get<std::int64_t>();
    case ParamType::kDouble:
      if (!v.is_number()) throw bad();
      return v.get<double>();
    case ParamType::kBool:
      if (!v.is_boolean()) throw bad();
      return v;
    case ParamType::kList:
      if (v.is_string()) return split_list(v.get<std::string>());
      if (!v.is_array()) throw bad();
      for (const auto& item : v) {
        if (!item.is_string()) throw bad();
      }
      return v;
  }
  throw bad();
}

void check_value(const ParamSpec& p, const json& v) {
  if (v.is_null()) return;
  if (!p.choices.empty() &&
      std::find(p.choices.begin(), p.choices.end(), v.get<std::string>()) == p.choices.end()) {
    std::string allowed;
    for (const auto& c : p.choices) allowed += (allowed.empty() ? "" : "|") + c;
    throw UsageError("--" + p.flag + " must be one of " + allowed);
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if ((p.min && x < *p.min) || (p.max && x > *p.max)) {
      throw UsageError("--" + p.flag + " is out of range");
    }
  }
  if (p.key == "source" && !corpus::LabelSource::parse(v.get<std::string>())) {
    throw UsageError("--source must be 'adjudicated' or 'annotator:<id>'");
  }
  if (p.key == "split") {
    try {
      lexical::parse_split_ratios(v.get<std::string>());
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("--split: ") + e.what());
    }
  }
  if (p.key == "dimensions") {
    for (const auto& d : v) {
      if (!corpus::parse_dimension(d.get<std::string>())) {
        throw UsageError("unknown dimension '" + d.get<std::string>() + "'");
      }
    }
  }
}

}  // namespace

const std::vector<ParamSpec>& param_registry() {
  static const std::vector<ParamSpec> kRegistry = build_registry();
  return kRegistry;
}

const ParamSpec* find_param(std::string_view key) {
  for (const auto& p : param_registry()) {
    if (p.key == key) return &p;
  }
  return nullptr;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> kNames = {"ingest",  "validate", "agreement", "analyze",
                                                  "lexical", "classify", "polarize",  "curate",
                                                  "lda",     "segment"};
  return kNames;
}

std::vector<const ParamSpec*> params_for(std::string_view command) {
  const auto it = command_params().find(command);
  if (it == command_params().end()) throw UsageError("unknown command '" + std::string(command) + "'");
  std::vector<const ParamSpec*> out;
  for (const auto& p : param_registry()) {
    if (shared_keys().count(p.key) ||
        std::find(it->second.begin(), it->second.end(), p.key) != it->second.end()) {
      out.push_back(&p);
    }
  }
  return out;
}

bool RunConfig::has(std::string_view key) const {
  const auto it = values_.find(std::string(key));
  return it != values_.end() && !it->is_null();
}

std::string RunConfig::str(std::string_view key) const {
  return has(key) ? values_.at(std::string(key)).get<std::string>() : std::string();
}

std::int64_t RunConfig::integer(std::string_view key) const {
  return values_.at(std::string(key)).get<std::int64_t>();
}

double RunConfig::number(std::string_view key) const {
  return values_.at(std::string(key)).get<double>();
}

bool RunConfig::flag(std::string_view key) const {
  return has(key) && values_.at(std::string(key)).get<bool>();
}

std::vector<std::string> RunConfig::list(std::string_view key) const {
  if (!has(key)) return {};
  return values_.at(std::string(key)).get<std::vector<std::string>>();
}

std::string RunConfig::required_str(std::string_view key) const {
  if (!has(key)) {
    const auto* p = find_param(key);
    throw UsageError("missing required option --" + (p ? p->flag : std::string(key)));
  }
  return str(key);
}

RunConfig resolve_config(std::string_view command,
                         const std::map<std::string, std::string>& flags,
                         const std::optional<std::string>& jobs_env) {
  const auto params = params_for(command);
  ordered_json values = ordered_json::object();
  for (const auto* p : params) values[p->key] = p->default_value;

  const auto config_flag = flags.find("config");
  if (config_flag != flags.end()) {
    std::ifstream in(config_flag->second);
    if (!in) throw UsageError("cannot open config file '" + config_flag->second + "'");
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!file.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : file.items()) {
      const ParamSpec* p = find_param(key);
      if (!p || key == "config") throw UsageError("unknown config key '" + key + "'");
      // Keys for other commands are accepted so one file can serve them all.
      if (values.contains(key)) values[key] = coerce_config_value(*p, value);
    }
  }
  if (jobs_env && !jobs_env->empty()) {
    try {
      values["jobs"] = parse_flag_value(*find_param("jobs"), *jobs_env);
    } catch (const UsageError&) {
      throw UsageError("POLARMETER_JOBS must be a positive integer");
    }
  }
  for (const auto& [key, text] : flags) {
    const ParamSpec* p = find_param(key);
    if (!p || !values.contains(key)) {
      throw UsageError("option --" + (p ? p->flag : key) + " does not apply to '" +
                       std::string(command) + "'");
    }
    values[key] = parse_flag_value(*p, text);
  }
  for (const auto* p : params) check_value(*p, values[p->key]);
  values.erase("config");
  return RunConfig(std::string(command), std::move(values));
}

}  // namespace polarmeter::cli
