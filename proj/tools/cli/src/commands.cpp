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

#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "polarmeter/agreement.hpp"
#include "polarmeter/analytics.hpp"
#include "polarmeter/corpus.hpp"
#include "polarmeter/csv.hpp"
#include "polarmeter/error.hpp"
#include "polarmeter/lexical.hpp"
#include "polarmeter/log.hpp"
#include "polarmeter/polarization.hpp"
#include "polarmeter/random.hpp"
#include "polarmeter/topicmodel.hpp"

namespace polarmeter::cli {
namespace {

namespace fs = std::filesystem;
using corpus::Corpus;
using corpus::Dimension;
using corpus::Label;
using nlohmann::ordered_json;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string dim_name(Dimension d) { return std::string(corpus::to_string(d)); }

std::uint64_t module_seed(const RunConfig& config, std::string_view tag) {
  return derive_seed(static_cast<std::uint64_t>(config.integer("seed")), tag);
}

corpus::LabelSource label_source(const RunConfig& config) {
  return *corpus::LabelSource::parse(config.str("source"));
}

std::vector<Dimension> dimension_list(const RunConfig& config) {
  std::vector<Dimension> out;
  if (config.has("dimension")) {
    const std::string d = config.str("dimension");
    if (d == "all") return {corpus::kDimensions.begin(), corpus::kDimensions.end()};
    out.push_back(*corpus::parse_dimension(d));
    return out;
  }
  for (const auto& name : config.list("dimensions")) {
    const Dimension d = *corpus::parse_dimension(name);
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  }
  return out;
}

fs::path output_path(CommandContext& ctx, std::string_view key, std::string_view fallback) {
  return ctx.config.has(key) ? fs::path(ctx.config.str(key)) : ctx.outputs.out_dir() / fallback;
}

Table validation_table(const corpus::ValidationReport& report) {
  Table t{{"severity", "article_id", "paragraph_index", "message"}, {}};
  const auto add = [&](const corpus::Issue& issue, const char* severity) {
    t.rows.push_back({text_cell(severity), text_cell(issue.article_id),
                      issue.paragraph_index
                          ? int_cell(static_cast<std::int64_t>(*issue.paragraph_index))
                          : empty_cell(),
                      text_cell(issue.message)});
  };
  for (const auto& e : report.errors) add(e, "error");
  for (const auto& w : report.warnings) add(w, "warning");
  return t;
}

struct LoadedCorpus {
  Corpus corpus;
  corpus::ValidationReport report;
};

// Parses and validates the --in corpus. Validation errors are written to the
// validation report; the caller decides whether they are fatal.
LoadedCorpus read_corpus(CommandContext& ctx) {
  const fs::path path = ctx.config.required_str("in");
  ctx.outputs.add_input(path);
  LoadedCorpus loaded;
  std::vector<corpus::Issue> warnings;
  loaded.corpus = corpus::parse_corpus_string(read_file(path), &warnings);
  corpus::ValidationOptions options;
  if (ctx.config.has("min_year")) {
    options.min_year = static_cast<int>(ctx.config.integer("min_year"));
    options.max_year = static_cast<int>(ctx.config.integer("max_year"));
  }
  loaded.report = corpus::validate(loaded.corpus, options);
  loaded.report.warnings.insert(loaded.report.warnings.begin(), warnings.begin(), warnings.end());
  return loaded;
}

// Corpus for the analysis commands; nullopt (after writing the report) when
// it fails validation.
std::optional<Corpus> load_valid_corpus(CommandContext& ctx) {
  auto loaded = read_corpus(ctx);
  if (loaded.report.ok()) return std::move(loaded.corpus);
  const auto path = ctx.outputs.write_table("validation", validation_table(loaded.report));
  ctx.out << "corpus failed validation with " << loaded.report.errors.size()
          << " error(s); report: " << path.string() << '\n';
  return std::nullopt;
}

int cmd_validate(CommandContext& ctx, bool write_canonical) {
  const auto loaded = read_corpus(ctx);
  const auto report_path = ctx.outputs.write_table("validation", validation_table(loaded.report));
  if (!loaded.report.ok()) {
    ctx.out << "invalid: " << loaded.report.errors.size() << " error(s), "
            << loaded.report.warnings.size() << " warning(s); report: " << report_path.string()
            << '\n';
    return 1;
  }
  if (write_canonical) {
    std::ostringstream canonical;
    corpus::write_corpus(canonical, loaded.corpus);
    ctx.outputs.write_file(output_path(ctx, "out", "corpus.jsonl"), canonical.str());
  }
  ctx.out << "valid: " << loaded.corpus.articles.size() << " articles, "
          << loaded.corpus.paragraph_count() << " paragraphs, "
          << loaded.report.warnings.size() << " warning(s)\n";
  return 0;
}

std::string join_labels(const std::vector<Label>& labels) {
  std::string out;
  for (Label l : labels) {
    if (!out.empty()) out += ';';
    out += corpus::to_string(l);
  }
  return out;
}

int cmd_agreement(CommandContext& ctx) {
  const auto c = load_valid_corpus(ctx);
  if (!c) return 1;
  const bool include_irrelevant = !ctx.config.flag("exclude_irrelevant");
  Table alpha{{"dimension", "alpha", "pairable_values", "units"}, {}};
  Table diffs{{"dimension", "article_id", "paragraph_index", "labels"}, {}};
  for (Dimension d : dimension_list(ctx.config)) {
    const auto matrix = agreement::build_reliability(*c, d, include_irrelevant);
    try {
      const auto r = agreement::krippendorff_alpha(matrix);
      alpha.rows.push_back({text_cell(dim_name(d)), number_cell(r.alpha),
                            int_cell(static_cast<std::int64_t>(r.pairable_values)),
                            int_cell(static_cast<std::int64_t>(r.pairable_units))});
      ctx.out << dim_name(d) << ": alpha " << csv::format_fixed(r.alpha, 3) << " over "
              << r.pairable_units << " units\n";
    } catch (const InvalidArgument&) {
      log_warning("agreement", dim_name(d) + ": no paragraph has two or more annotations");
      alpha.rows.push_back({text_cell(dim_name(d)), empty_cell(), int_cell(0), int_cell(0)});
    }
    for (const auto& dis : agreement::disagreements(*c, d)) {
      diffs.rows.push_back({text_cell(dim_name(d)), text_cell(dis.article_id),
                            int_cell(static_cast<std::int64_t>(dis.paragraph_index)),
                            text_cell(join_labels(dis.labels))});
    }
  }
  ctx.outputs.write_table("agreement", alpha);
  ctx.outputs.write_table("disagreements", diffs);
  return 0;
}

Table counts_table(const analytics::CountTable& counts) {
  Table t{{"outlet", "docs", "econ", "social", "foreign", "total"}, {}};
  const auto add = [&](const analytics::CountRow& r) {
    t.rows.push_back({text_cell(r.outlet), int_cell(static_cast<std::int64_t>(r.docs)),
                      int_cell(static_cast<std::int64_t>(r.per_dimension[0])),
                      int_cell(static_cast<std::int64_t>(r.per_dimension[1])),
                      int_cell(static_cast<std::int64_t>(r.per_dimension[2])),
                      int_cell(static_cast<std::int64_t>(r.total()))});
  };
  for (const auto& r : counts.rows) add(r);
  add(counts.totals);
  return t;
}

Cell percent_cell(const std::optional<double>& fraction_times_100) {
  return fraction_times_100 ? fixed_cell(*fraction_times_100, 2) : empty_cell();
}

std::string cell_name(const analytics::Cell& cell) {
  return dim_name(cell.dimension) + "-" + std::string(corpus::to_string(cell.label));
}

Table cooc_table(const analytics::CooccurrenceMatrix& m) {
  Table t{{"cell"}, {}};
  for (const auto& c : m.axis) t.header.push_back(cell_name(c));
  for (std::size_t i = 0; i < analytics::kCellCount; ++i) {
    std::vector<Cell> row{text_cell(cell_name(m.axis[i]))};
    for (std::size_t j = 0; j < analytics::kCellCount; ++j) {
      row.push_back(fixed_cell(m.percent[i][j], 2));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

int cmd_analyze(CommandContext& ctx) {
  const auto c = load_valid_corpus(ctx);
  if (!c) return 1;
  analytics::Options opts;
  opts.source = label_source(ctx.config);
  opts.denominator = ctx.config.str("denominator") == "all" ? analytics::Denominator::kAll
                                                            : analytics::Denominator::kLabeled;
  opts.strict_divergence = ctx.config.flag("strict_divergence");
  opts.jobs = static_cast<int>(ctx.config.integer("jobs"));
  const auto want = [&](std::string_view part) {
    return ctx.selector == "all" || ctx.selector == part;
  };

  if (want("counts")) {
    const auto counts = analytics::label_counts(*c, opts);
    ctx.outputs.write_table("counts", counts_table(counts));
    ctx.out << "counts: " << counts.totals.docs << " docs, " << counts.totals.total()
            << " labels\n";
  }
  if (want("distribution")) {
    for (Dimension d : corpus::kDimensions) {
      Table t{{"outlet", "liberal", "neutral", "conservative", "labeled"}, {}};
      for (const auto& row : analytics::label_distribution(*c, d, opts)) {
        std::optional<double> l, n, k;
        if (row.fractions) {
          l = row.fractions->liberal * 100.0;
          n = row.fractions->neutral * 100.0;
          k = row.fractions->conservative * 100.0;
        }
        t.rows.push_back({text_cell(row.outlet), percent_cell(l), percent_cell(n),
                          percent_cell(k), int_cell(static_cast<std::int64_t>(row.labeled))});
      }
      ctx.outputs.write_table("dist_" + dim_name(d), t);
    }
  }
  if (want("cooccurrence")) {
    ctx.outputs.write_table("cooc_paragraph",
                            cooc_table(analytics::cooccurrence(*c, analytics::Level::kParagraph, opts)));
    ctx.outputs.write_table("cooc_article",
                            cooc_table(analytics::cooccurrence(*c, analytics::Level::kArticle, opts)));
  }
  if (want("divergent")) {
    const auto s = analytics::divergent_article_stats(*c, opts);
    Table t{{"articles", "divergent", "pct_divergent", "liberal", "neutral", "conservative"}, {}};
    std::optional<double> l, n, k;
    if (s.shares) {
      l = s.shares->liberal;
      n = s.shares->neutral;
      k = s.shares->conservative;
    }
    t.rows.push_back({int_cell(static_cast<std::int64_t>(s.articles)),
                      int_cell(static_cast<std::int64_t>(s.divergent)),
                      fixed_cell(s.pct_divergent, 2), percent_cell(l), percent_cell(n),
                      percent_cell(k)});
    ctx.outputs.write_table("divergent", t);
    ctx.out << "divergent: " << s.divergent << " of " << s.articles << " articles ("
            << csv::format_fixed(s.pct_divergent, 2) << "%)\n";
  }
  return 0;
}

lexical::TrainParams train_params(const RunConfig& config, std::string_view tag) {
  lexical::TrainParams p;
  p.l2 = config.number("l2");
  p.learning_rate = config.number("lr");
  p.epochs = static_cast<int>(config.integer("epochs"));
  p.seed = module_seed(config, tag);
  return p;
}

lexical::FeatureMode feature_mode(const RunConfig& config) {
  return config.flag("binary_features") ? lexical::FeatureMode::kBinary
                                        : lexical::FeatureMode::kCounts;
}

Cell weight_cell(double w) { return {lexical::format_weight(w), w}; }

int cmd_lexical(CommandContext& ctx) {
  const auto c = load_valid_corpus(ctx);
  if (!c) return 1;
  const auto source = label_source(ctx.config);
  for (Dimension d : dimension_list(ctx.config)) {
    // Liberal (0) against conservative (1); neutral paragraphs are left out.
    const auto labeled = lexical::collect_paragraphs(*c, d, source);
    std::vector<lexical::Document> docs;
    std::vector<int> y;
    for (std::size_t i = 0; i < labeled.labels.size(); ++i) {
      if (labeled.labels[i] == Label::kNeutral) continue;
      docs.push_back(labeled.documents[i]);
      y.push_back(labeled.labels[i] == Label::kConservative ? 1 : 0);
    }
    if (std::count(y.begin(), y.end(), 1) == 0 || std::count(y.begin(), y.end(), 0) == 0) {
      throw Error("lexical: " + dim_name(d) +
                  " needs both liberal and conservative paragraphs");
    }
    const auto vocab =
        lexical::build_vocab(docs, static_cast<std::size_t>(ctx.config.integer("min_df")));
    if (vocab.size() == 0) throw Error("lexical: " + dim_name(d) + " vocabulary is empty");
    const auto x = lexical::featurize(docs, vocab, feature_mode(ctx.config));
    const auto model = lexical::train_binary_lr(x, y, train_params(ctx.config, "lexical"));
    const std::size_t k =
        std::min(static_cast<std::size_t>(ctx.config.integer("top_k")), vocab.size());
    const auto terms = lexical::top_terms(model, k);

    Table t{{"rank", "side", "term", "weight"}, {}};
    for (std::size_t i = 0; i < terms.conservative.size(); ++i) {
      t.rows.push_back({int_cell(static_cast<std::int64_t>(i + 1)), text_cell("conservative"),
                        text_cell(terms.conservative[i].term),
                        weight_cell(terms.conservative[i].weight)});
    }
    for (std::size_t i = 0; i < terms.liberal.size(); ++i) {
      t.rows.push_back({int_cell(static_cast<std::int64_t>(i + 1)), text_cell("liberal"),
                        text_cell(terms.liberal[i].term), weight_cell(terms.liberal[i].weight)});
    }
    ctx.outputs.write_table("lexical_" + dim_name(d), t);
    ctx.out << dim_name(d) << ": " << y.size() << " paragraphs, " << vocab.size() << " terms\n";
  }
  return 0;
}

std::vector<int> label_indices(const std::vector<Label>& labels) {
  std::vector<int> y;
  y.reserve(labels.size());
  for (Label l : labels) y.push_back(static_cast<int>(corpus::index_of(l)));
  return y;
}

int cmd_classify(CommandContext& ctx) {
  const auto c = load_valid_corpus(ctx);
  if (!c) return 1;
  const auto source = label_source(ctx.config);
  const auto ratios = lexical::parse_split_ratios(ctx.config.str("split"));
  const auto split = lexical::split_by_article(*c, ratios, module_seed(ctx.config, "split"));
  const std::set<std::string> train_ids(split.train.begin(), split.train.end());
  const std::set<std::string> dev_ids(split.dev.begin(), split.dev.end());
  const std::set<std::string> test_ids(split.test.begin(), split.test.end());

  for (Dimension d : dimension_list(ctx.config)) {
    const auto train = lexical::collect_paragraphs(*c, d, source, &train_ids);
    if (train.documents.empty()) {
      throw Error("classify: no labeled " + dim_name(d) + " paragraphs in the training split");
    }
    const auto vocab = lexical::build_vocab(
        train.documents, static_cast<std::size_t>(ctx.config.integer("min_df")));
    if (vocab.size() == 0) throw Error("classify: " + dim_name(d) + " vocabulary is empty");
    const auto mode = feature_mode(ctx.config);
    const auto y_train = label_indices(train.labels);
    lexical::FocalParams focal;
    focal.gamma = ctx.config.number("gamma");
    if (ctx.config.str("class_weights") == "auto") {
      focal.class_weights = lexical::inverse_frequency_weights(y_train, 3);
    }
    const auto model =
        lexical::train_multinomial_focal(lexical::featurize(train.documents, vocab, mode),
                                         y_train, 3, focal, train_params(ctx.config, "classify"));

    Table t{{"split", "label", "support", "precision", "recall", "f1"}, {}};
    for (const auto& [name, ids] : {std::pair{"dev", &dev_ids}, std::pair{"test", &test_ids}}) {
      const auto part = lexical::collect_paragraphs(*c, d, source, ids);
      if (part.documents.empty()) {
        log_warning("classify", dim_name(d) + ": " + name + " split has no labeled paragraphs");
        continue;
      }
      const auto y = label_indices(part.labels);
      const auto report = lexical::evaluate(model, lexical::featurize(part.documents, vocab, mode), y);
      for (const auto& m : report.per_class) {
        t.rows.push_back({text_cell(name),
                          text_cell(std::string(corpus::to_string(static_cast<Label>(m.label)))),
                          int_cell(static_cast<std::int64_t>(m.support)),
                          number_cell(m.precision), number_cell(m.recall), number_cell(m.f1)});
      }
      t.rows.push_back({text_cell(name), text_cell("macro"),
                        int_cell(static_cast<std::int64_t>(y.size())), empty_cell(), empty_cell(),
                        number_cell(report.macro_f1)});
      ctx.out << dim_name(d) << " " << name << ": macro-F1 "
              << csv::format_fixed(report.macro_f1, 3) << " on " << y.size() << " paragraphs\n";
    }
    ctx.outputs.write_table("eval_" + dim_name(d), t);
  }
  return 0;
}

void append_series(Table& t, const std::vector<polarization::PolarizationSeries>& series) {
  for (const auto& s : series) {
    for (const auto& p : s.points) {
      Cell flag = empty_cell();
      if (p.signed_value) flag = number_cell(*p.signed_value);
      if (p.bimodal) flag = bool_cell(*p.bimodal);
      t.rows.push_back({text_cell(std::string(polarization::to_string(s.measure))),
                        text_cell(s.stratum), int_cell(p.bin.start_year),
                        int_cell(p.bin.end_year), optional_number(p.value), std::move(flag),
                        text_cell(std::string(polarization::reason_code(p.reason)))});
    }
  }
}

Table series_table() {
  return {{"measure", "stratum", "bin_start", "bin_end", "value", "signed_value_or_flag", "reason"},
          {}};
}

int cmd_polarize(CommandContext& ctx) {
  const bool want_sorting = ctx.selector == "all" || ctx.selector == "sorting";
  if (ctx.selector == "sorting" && !ctx.config.has("bias_file")) {
    throw UsageError("polarize sorting requires --bias-file");
  }
  const auto c = load_valid_corpus(ctx);
  if (!c) return 1;
  polarization::SeriesOptions opts;
  opts.source = label_source(ctx.config);
  opts.bias_epsilon = ctx.config.number("bias_epsilon");
  opts.min_pairs = static_cast<std::size_t>(ctx.config.integer("min_pairs"));
  opts.bc_threshold = ctx.config.number("bc_threshold");
  opts.moments = ctx.config.str("moments") == "population" ? polarization::MomentMode::kPopulation
                                                           : polarization::MomentMode::kSample;
  opts.jobs = static_cast<int>(ctx.config.integer("jobs"));
  const double tau = ctx.config.number("tau");
  std::optional<int> anchor;
  if (ctx.config.has("bin_anchor")) anchor = static_cast<int>(ctx.config.integer("bin_anchor"));
  const auto bins =
      polarization::corpus_bins(*c, static_cast<int>(ctx.config.integer("bin_width")), anchor);

  std::vector<polarization::OutletBias> biases;
  if (ctx.config.has("bias_file")) {
    const fs::path path = ctx.config.str("bias_file");
    ctx.outputs.add_input(path);
    std::istringstream in(read_file(path));
    biases = polarization::read_bias_csv(in);
    Table t{{"outlet", "composite", "group", "sites"}, {}};
    for (const auto& b : biases) {
      std::int64_t rated = 0;
      for (const auto& r : b.site_ratings) rated += r.second.has_value();
      t.rows.push_back({text_cell(b.outlet), number_cell(b.composite),
                        text_cell(std::string(polarization::to_string(
                            polarization::bias_group(b.composite, tau)))),
                        int_cell(rated)});
    }
    ctx.outputs.write_table("composites", t);
  }
  const auto groups = polarization::group_outlets(biases, tau);

  if (want_sorting) {
    if (biases.empty()) {
      log_warning("polarize", "no --bias-file; sorting skipped");
    } else {
      Table t = series_table();
      const auto per_outlet = polarization::sorting_series(*c, biases, bins, opts);
      append_series(t, per_outlet);
      append_series(t, ctx.config.flag("pooled")
                           ? polarization::pooled_sorting_series(*c, biases, bins, tau, opts)
                           : polarization::group_series(per_outlet, groups));
      ctx.outputs.write_table("sorting", t);
    }
  }
  if (ctx.selector == "all" || ctx.selector == "constraint") {
    const auto dims = dimension_list(ctx.config);
    if (dims.size() < 2) throw UsageError("constraint needs at least two --dimensions");
    Table t = series_table();
    std::vector<polarization::PolarizationSeries> all;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      for (std::size_t j = i + 1; j < dims.size(); ++j) {
        auto s = polarization::constraint_series(*c, bins, dims[i], dims[j], opts);
        all.insert(all.end(), s.begin(), s.end());
      }
    }
    append_series(t, all);
    if (!groups.empty()) append_series(t, polarization::group_series(all, groups));
    ctx.outputs.write_table("constraint", t);
  }
  if (ctx.selector == "all" || ctx.selector == "divergence") {
    Table t = series_table();
    std::vector<polarization::PolarizationSeries> all;
    for (Dimension d : dimension_list(ctx.config)) {
      all.push_back(polarization::divergence_series(*c, d, bins, opts));
    }
    append_series(t, all);
    ctx.outputs.write_table("divergence", t);
  }
  ctx.out << "polarize: " << c->articles.size() << " articles in " << bins.size() << " bins\n";
  return 0;
}

struct RawRecord {
  std::string line;
  ordered_json object;
  std::size_t line_number = 0;
};

// One JSON object per line; blank lines are skipped.
std::vector<RawRecord> read_raw_jsonl(CommandContext& ctx) {
  const fs::path path = ctx.config.required_str("in");
  ctx.outputs.add_input(path);
  std::istringstream in(read_file(path));
  std::vector<RawRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    RawRecord r;
    try {
      r.object = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      throw ParseError(n, std::string("malformed JSON: ") + e.what());
    }
    if (!r.object.is_object()) throw ParseError(n, "expected a JSON object");
    r.line = std::move(line);
    r.line_number = n;
    out.push_back(std::move(r));
  }
  return out;
}

// The record's "text", or its paragraph texts joined by blank lines.
std::string record_text(const RawRecord& r) {
  const auto text = r.object.find("text");
  if (text != r.object.end()) {
    if (!text->is_string()) throw ParseError(r.line_number, "\"text\" must be a string");
    return text->get<std::string>();
  }
  const auto paragraphs = r.object.find("paragraphs");
  if (paragraphs != r.object.end() && paragraphs->is_array()) {
    std::string joined;
    for (const auto& p : *paragraphs) {
      const ordered_json* t = p.is_string() ? &p : (p.is_object() && p.contains("text") ? &p["text"] : nullptr);
      if (!t || !t->is_string()) continue;
      if (!joined.empty()) joined += "\n\n";
      joined += t->get<std::string>();
    }
    return joined;
  }
  throw ParseError(r.line_number, "record has no \"text\" field");
}

int cmd_curate(CommandContext& ctx) {
  const auto records = read_raw_jsonl(ctx);
  std::vector<std::string> texts;
  for (const auto& r : records) texts.push_back(record_text(r));
  topicmodel::CurationRules rules;
  rules.include_terms = ctx.config.list("include");
  rules.exclude_phrases = ctx.config.list("exclude");
  const auto result = topicmodel::curate(texts, rules);

  std::string kept;
  for (std::size_t i : result.kept) kept += records[i].line + "\n";
  ctx.outputs.write_file(output_path(ctx, "out", "kept.jsonl"), kept);

  Table audit{{"rule", "rejected"}, {}};
  for (const auto& rc : result.audit) {
    audit.rows.push_back({text_cell(rc.rule_id), int_cell(static_cast<std::int64_t>(rc.rejected))});
  }
  audit.rows.push_back({text_cell("total"), int_cell(static_cast<std::int64_t>(result.total))});
  audit.rows.push_back({text_cell("kept"), int_cell(static_cast<std::int64_t>(result.kept.size()))});
  if (ctx.config.has("audit")) {
    ctx.outputs.write_file(ctx.config.str("audit"), render_csv(audit));
  } else {
    ctx.outputs.write_table("audit", audit);
  }
  ctx.out << "curate: kept " << result.kept.size() << " of " << result.total << " articles\n";
  return 0;
}

int cmd_lda(CommandContext& ctx) {
  const auto records = read_raw_jsonl(ctx);
  std::vector<lexical::Document> docs;
  for (const auto& r : records) {
    auto tokens = lexical::tokenize(record_text(r));
    if (tokens.empty()) {
      log_warning("lda", "line " + std::to_string(r.line_number) + ": no tokens; skipped");
      continue;
    }
    docs.push_back(std::move(tokens));
  }
  if (docs.empty()) throw Error("lda: no documents with tokens");
  topicmodel::LdaParams params;
  params.topics = static_cast<std::size_t>(ctx.config.integer("topics"));
  if (ctx.config.has("alpha")) params.alpha = ctx.config.number("alpha");
  params.beta = ctx.config.number("beta");
  params.iterations = static_cast<int>(ctx.config.integer("iters"));
  params.seed = module_seed(ctx.config, "lda");
  const auto model = topicmodel::lda_fit(docs, params);

  std::ostringstream saved;
  topicmodel::save_model(saved, model);
  ctx.outputs.write_file(output_path(ctx, "save", "model.json"), saved.str());

  Table t{{"topic", "rank", "word", "probability"}, {}};
  const auto k = static_cast<std::size_t>(ctx.config.integer("top_words"));
  for (std::size_t topic = 0; topic < model.num_topics; ++topic) {
    const auto words = topicmodel::top_words(model, topic, std::min(k, model.vocabulary.size()));
    for (std::size_t i = 0; i < words.size(); ++i) {
      t.rows.push_back({int_cell(static_cast<std::int64_t>(topic)),
                        int_cell(static_cast<std::int64_t>(i + 1)), text_cell(words[i].first),
                        number_cell(words[i].second)});
    }
  }
  ctx.outputs.write_table("topics", t);
  ctx.out << "lda: " << docs.size() << " documents, " << model.vocabulary.size() << " terms, "
          << model.num_topics << " topics\n";
  return 0;
}

int cmd_segment(CommandContext& ctx) {
  const fs::path model_path = ctx.config.required_str("model");
  ctx.outputs.add_input(model_path);
  std::istringstream model_in(read_file(model_path));
  const auto model = topicmodel::load_model(model_in);
  const auto records = read_raw_jsonl(ctx);

  topicmodel::TilingParams params;
  params.window = static_cast<std::size_t>(ctx.config.integer("window"));
  params.inference_iterations = static_cast<int>(ctx.config.integer("inference_iters"));
  params.modal_window = static_cast<int>(ctx.config.integer("modal_window"));
  params.threshold_multiplier = ctx.config.number("threshold_multiplier");
  params.max_segments = static_cast<std::size_t>(ctx.config.integer("max_segments"));
  params.seed = module_seed(ctx.config, "segment");

  std::string out;
  std::size_t segmented = 0, paragraphs = 0;
  for (const auto& r : records) {
    const std::string text = record_text(r);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
      log_warning("segment", "line " + std::to_string(r.line_number) + ": blank text; skipped");
      continue;
    }
    ordered_json obj = r.object;
    obj["paragraphs"] = topicmodel::segment_article(text, model, params);
    paragraphs += obj["paragraphs"].size();
    ++segmented;
    out += obj.dump() + "\n";
  }
  ctx.outputs.write_file(output_path(ctx, "out", "segmented.jsonl"), out);
  ctx.out << "segment: " << segmented << " articles into " << paragraphs << " paragraphs\n";
  return 0;
}

}  // namespace

int run_command(CommandContext& ctx) {
  static const std::map<std::string, std::function<int(CommandContext&)>, std::less<>> kCommands = {
      {"ingest", [](CommandContext& c) { return cmd_validate(c, true); }},
      {"validate", [](CommandContext& c) { return cmd_validate(c, false); }},
      {"agreement", cmd_agreement},
      {"analyze", cmd_analyze},
      {"lexical", cmd_lexical},
      {"classify", cmd_classify},
      {"polarize", cmd_polarize},
      {"curate", cmd_curate},
      {"lda", cmd_lda},
      {"segment", cmd_segment},
  };
  const auto it = kCommands.find(ctx.config.command());
  if (it == kCommands.end()) throw UsageError("unknown command '" + ctx.config.command() + "'");
  return it->second(ctx);
}

}  // namespace polarmeter::cli
