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

#ifndef POLARMETER_CORPUS_HPP_
#define POLARMETER_CORPUS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polarmeter::corpus {

enum class Dimension : std::uint8_t { kEconomic = 0, kSocial = 1, kForeign = 2 };

inline constexpr std::array<Dimension, 3> kDimensions = {
    Dimension::kEconomic, Dimension::kSocial, Dimension::kForeign};

enum class Label : std::uint8_t {
  kLiberal = 0,
  kNeutral = 1,
  kConservative = 2,
  kIrrelevant = 3,
};

inline constexpr std::array<Label, 4> kLabels = {
    Label::kLiberal, Label::kNeutral, Label::kConservative, Label::kIrrelevant};

// The three labels that carry a position, in score order.
inline constexpr std::array<Label, 3> kLeanLabels = {
    Label::kLiberal, Label::kNeutral, Label::kConservative};

constexpr std::size_t index_of(Dimension d) { return static_cast<std::size_t>(d); }
constexpr std::size_t index_of(Label l) { return static_cast<std::size_t>(l); }

// Canonical names: "economic", "social", "foreign".
std::string_view to_string(Dimension d);
// Canonical names: "liberal", "neutral", "conservative", "irrelevant".
std::string_view to_string(Label l);

// Accepts the canonical names plus the short forms "econ" and "fgn".
std::optional<Dimension> parse_dimension(std::string_view text);
// Exact lowercase match only.
std::optional<Label> parse_label(std::string_view text);

// liberal -1, neutral 0, conservative +1; irrelevant has no score.
constexpr std::optional<int> label_score(Label label) {
  switch (label) {
    case Label::kLiberal:
      return -1;
    case Label::kNeutral:
      return 0;
    case Label::kConservative:
      return 1;
    case Label::kIrrelevant:
      return std::nullopt;
  }
  return std::nullopt;
}

// Per-dimension labels. A slot is empty only when the input omitted that
// dimension, which validate() reports as an error.
class LabelMap {
 public:
  LabelMap() = default;
  LabelMap(Label economic, Label social, Label foreign)
      : slots_{economic, social, foreign} {}

  std::optional<Label> get(Dimension d) const { return slots_[index_of(d)]; }
  void set(Dimension d, std::optional<Label> label) { slots_[index_of(d)] = label; }

  bool complete() const {
    return slots_[0].has_value() && slots_[1].has_value() && slots_[2].has_value();
  }

  // Score on d, or nullopt if the label is irrelevant or missing.
  std::optional<int> score(Dimension d) const {
    const auto l = get(d);
    return l ? label_score(*l) : std::nullopt;
  }

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

 private:
  std::array<std::optional<Label>, 3> slots_{};
};

struct AnnotationSet {
  std::string annotator;
  LabelMap labels;

  friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

struct Paragraph {
  std::size_t index = 0;
  std::string text;
  std::vector<AnnotationSet> annotations;
  std::optional<LabelMap> adjudicated;

  const AnnotationSet* find_annotation(std::string_view annotator) const;

  friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

struct Article {
  std::string article_id;
  std::string outlet;
  int year = 0;
  std::vector<Paragraph> paragraphs;

  friend bool operator==(const Article&, const Article&) = default;
};

struct Corpus {
  std::vector<Article> articles;

  std::size_t paragraph_count() const;
  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// One finding from parsing or validation.
struct Issue {
  std::string article_id;
  std::optional<std::size_t> paragraph_index;
  std::string message;

  friend bool operator==(const Issue&, const Issue&) = default;
};

struct ValidationReport {
  std::vector<Issue> errors;
  std::vector<Issue> warnings;

  bool ok() const { return errors.empty(); }
};

struct ValidationOptions {
  int min_year = 1900;
  int max_year = 2100;
};

// Reads line-delimited JSON, one article per line. Blank lines are skipped.
// Throws ParseError (with the 1-based line) on malformed JSON, wrong field
// types or unknown label strings, and ValidationError on a repeated
// article_id. Unknown object keys are reported through `warnings` (if given)
// and the log sink, and otherwise ignored.
Corpus parse_corpus(std::istream& in, std::vector<Issue>* warnings = nullptr);
Corpus parse_corpus_string(std::string_view text,
                           std::vector<Issue>* warnings = nullptr);

// Writes the canonical JSONL form read by parse_corpus.
void write_corpus(std::ostream& out, const Corpus& corpus);
std::string serialize_article(const Article& article);

// Checks every data-model invariant. Issues are ordered by
// (article_id, paragraph_index), article-level issues first.
ValidationReport validate(const Corpus& corpus, const ValidationOptions& options = {});

// Which labels an analysis reads: the adjudicated consensus or one annotator.
class LabelSource {
 public:
  static LabelSource adjudicated() { return LabelSource(); }
  static LabelSource annotator(std::string id) {
    LabelSource s;
    s.annotator_ = std::move(id);
    return s;
  }
  // "adjudicated" or "annotator:<id>".
  static std::optional<LabelSource> parse(std::string_view text);

  bool is_adjudicated() const { return !annotator_.has_value(); }
  const std::optional<std::string>& annotator_id() const { return annotator_; }
  std::string to_string() const;

  // The paragraph's labels for this source, if it has them.
  std::optional<LabelMap> labels_of(const Paragraph& paragraph) const;

 private:
  LabelSource() = default;
  std::optional<std::string> annotator_;
};

struct LabeledParagraph {
  const Article* article;
  const Paragraph* paragraph;
  LabelMap labels;
};

// Paragraphs that carry the requested source, in corpus order. The view
// borrows from the corpus and must not outlive it.
struct LabelView {
  std::vector<LabeledParagraph> items;
  std::size_t skipped = 0;
};

LabelView select_labels(const Corpus& corpus, const LabelSource& source);

}  // namespace polarmeter::corpus

#endif  // POLARMETER_CORPUS_HPP_
