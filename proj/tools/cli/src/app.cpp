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

#include "polarmeter/cli/app.hpp"

#include <CLI11.hpp>

#include <map>
#include <mutex>

#include "commands.hpp"
#include "polarmeter/cli/config.hpp"
#include "polarmeter/cli/output.hpp"
#include "polarmeter/error.hpp"
#include "polarmeter/log.hpp"

namespace polarmeter::cli {
namespace {

const std::map<std::string, std::string>& command_help() {
  static const std::map<std::string, std::string> kHelp = {
      {"ingest", "validate a corpus and write its canonical JSONL form"},
      {"validate", "check a corpus against the data model"},
      {"agreement", "Krippendorff's alpha per dimension"},
      {"analyze", "label counts, distributions, co-occurrence, divergent articles"},
      {"lexical", "logistic-regression ideology markers"},
      {"classify", "focal-loss classifier with an article-level split"},
      {"polarize", "sorting, issue constraint and divergence series"},
      {"curate", "keyword filtering of raw articles"},
      {"lda", "fit an LDA topic model"},
      {"segment", "split raw articles into paragraphs by topic tiling"},
  };
  return kHelp;
}

const std::map<std::string, std::vector<std::string>>& selectors() {
  static const std::map<std::string, std::vector<std::string>> kSelectors = {
      {"analyze", {"counts", "distribution", "cooccurrence", "divergent", "all"}},
      {"polarize", {"sorting", "constraint", "divergence", "all"}},
  };
  return kSelectors;
}

std::optional<LogLevel> parse_level(std::string_view text) {
  for (LogLevel l : {LogLevel::kDebug, LogLevel::kInfo, LogLevel::kWarning, LogLevel::kError}) {
    if (to_string(l) == text) return l;
  }
  return std::nullopt;
}

// Restores the previous log sink on scope exit.
class ScopedSink {
 public:
  ScopedSink(std::ostream& err, LogLevel min_level) {
    previous_ = set_log_sink([&err, min_level, mu = std::make_shared<std::mutex>()](
                                 LogLevel level, std::string_view component,
                                 std::string_view message) {
      if (level < min_level) return;
      nlohmann::ordered_json record;
      record["level"] = to_string(level);
      record["component"] = component;
      record["message"] = message;
      std::lock_guard lock(*mu);
      err << record.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    });
  }
  ~ScopedSink() { set_log_sink(std::move(previous_)); }
  ScopedSink(const ScopedSink&) = delete;
  ScopedSink& operator=(const ScopedSink&) = delete;

 private:
  LogSink previous_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& jobs_env) {
  CLI::App app("Paragraph-level ideology annotation analytics", "polarmeter");
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  std::map<std::string, std::map<std::string, std::string>> raw;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> selected;
  for (const auto& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name, command_help().at(name));
    if (auto it = selectors().find(name); it != selectors().end()) {
      selected[name] = "all";
      sub->add_option("what", selected[name], "part to compute")
          ->check(CLI::IsMember(it->second));
    }
    for (const ParamSpec* p : params_for(name)) {
      std::string help = p->help;
      if (!p->default_value.is_null()) {
        std::string shown;
        if (p->default_value.is_string()) {
          shown = p->default_value.get<std::string>();
        } else if (p->default_value.is_array()) {
          for (const auto& v : p->default_value) {
            shown += (shown.empty() ? "" : ",") + v.get<std::string>();
          }
        } else {
          shown = p->default_value.dump();
        }
        if (!shown.empty()) help += " [default: " + shown + "]";
      }
      CLI::Option* opt = p->type == ParamType::kBool
                             ? sub->add_flag("--" + p->flag)->description(help)
                             : sub->add_option("--" + p->flag, raw[name][p->key], help);
      if (!p->choices.empty()) {
        std::string names;
        for (const auto& c : p->choices) names += (names.empty() ? "" : "|") + c;
        opt->type_name(names);
      } else if (p->type == ParamType::kInt) {
        opt->type_name("INT");
      } else if (p->type == ParamType::kDouble) {
        opt->type_name("FLOAT");
      } else if (p->type == ParamType::kList) {
        opt->type_name("A,B,...");
      }
      options[name][p->key] = opt;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "polarmeter: " << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }
  const CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  std::map<std::string, std::string> flags;
  for (const auto& [key, opt] : options[command]) {
    if (opt->count() == 0) continue;
    flags[key] = find_param(key)->type == ParamType::kBool ? "true" : raw[command][key];
  }

  std::optional<RunConfig> config;
  try {
    config.emplace(resolve_config(command, flags, jobs_env));
  } catch (const UsageError& e) {
    err << "polarmeter " << command << ": " << e.what() << '\n' << sub->help();
    return kExitUsage;
  }

  ScopedSink sink(err, *parse_level(config->str("log_level")));
  RunOutputs outputs(config->str("out_dir"), config->str("format"));
  CommandContext ctx{*config, outputs, out, selected.count(command) ? selected[command] : "all"};
  try {
    const int status = run_command(ctx);
    outputs.write_manifest(*config);
    return status;
  } catch (const UsageError& e) {
    err << "polarmeter " << command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    log(LogLevel::kError, command, e.what());
    return kExitDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    log(LogLevel::kError, command, e.what());
    return kExitDataError;
  }
}

}  // namespace polarmeter::cli
