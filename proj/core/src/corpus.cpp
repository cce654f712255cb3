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

#include "polarmeter/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace polarmeter::corpus {

std::string_view to_string(Dimension d) {
  switch (d) {
    case Dimension::kEconomic:
      return "economic";
    case Dimension::kSocial:
      return "social";
    case Dimension::kForeign:
      return "foreign";
  }
  return "unknown";
}

std::string_view to_string(Label l) {
  switch (l) {
    case Label::kLiberal:
      return "liberal";
    case Label::kNeutral:
      return "neutral";
    case Label::kConservative:
      return "conservative";
    case Label::kIrrelevant:
      return "irrelevant";
  }
  return "unknown";
}

std::optional<Dimension> parse_dimension(std::string_view text) {
  if (text == "economic" || text == "econ") return Dimension::kEconomic;
  if (text == "social") return Dimension::kSocial;
  if (text == "foreign" || text == "fgn") return Dimension::kForeign;
  return std::nullopt;
}

std::optional<Label> parse_label(std::string_view text) {
  for (Label l : kLabels) {
    if (text == to_string(l)) return l;
  }
  return std::nullopt;
}

const AnnotationSet* Paragraph::find_annotation(std::string_view annotator) const {
  for (const auto& a : annotations) {
    if (a.annotator == annotator) return &a;
  }
  return nullptr;
}

std::size_t Corpus::paragraph_count() const {
  std::size_t n = 0;
  for (const auto& a : articles) n += a.paragraphs.size();
  return n;
}

namespace {

void check_label_map(const LabelMap& labels, const std::string& what,
                     const Article& article, std::size_t paragraph_index,
                     std::vector<Issue>& errors) {
  for (Dimension d : kDimensions) {
    if (!labels.get(d)) {
      errors.push_back({article.article_id, paragraph_index,
                        what + " is missing dimension '" +
                            std::string(to_string(d)) + "'"});
    }
  }
}

bool issue_less(const Issue& a, const Issue& b) {
  // Article-level issues (no paragraph) sort before paragraph-level ones.
  const auto key = [](const Issue& i) {
    return std::make_tuple(std::cref(i.article_id), i.paragraph_index.has_value(),
                           i.paragraph_index.value_or(0));
  };
  return key(a) < key(b);
}

}  // namespace

ValidationReport validate(const Corpus& corpus, const ValidationOptions& options) {
  ValidationReport report;
  std::map<std::string, int> id_counts;
  for (const auto& article : corpus.articles) ++id_counts[article.article_id];
  for (const auto& [id, count] : id_counts) {
    if (count > 1) {
      report.errors.push_back(
          {id, std::nullopt,
           "duplicate article_id (appears " + std::to_string(count) + " times)"});
    }
  }

  for (const auto& article : corpus.articles) {
    if (article.article_id.empty()) {
      report.errors.push_back({article.article_id, std::nullopt, "empty article_id"});
    }
    if (article.year < options.min_year || article.year > options.max_year) {
      report.errors.push_back(
          {article.article_id, std::nullopt,
           "year " + std::to_string(article.year) + " outside [" +
               std::to_string(options.min_year) + ", " +
               std::to_string(options.max_year) + "]"});
    }
    if (article.paragraphs.empty()) {
      report.errors.push_back({article.article_id, std::nullopt, "article has no paragraphs"});
    }
    for (std::size_t pos = 0; pos < article.paragraphs.size(); ++pos) {
      const Paragraph& p = article.paragraphs[pos];
      if (p.index != pos) {
        report.errors.push_back({article.article_id, p.index,
                                 "paragraph index " + std::to_string(p.index) +
                                     " at position " + std::to_string(pos) +
                                     " (indices must be 0..k-1 in order)"});
      }
      std::set<std::string> seen;
      for (const auto& ann : p.annotations) {
        if (!seen.insert(ann.annotator).second) {
          report.errors.push_back(
              {article.article_id, p.index, "duplicate annotator '" + ann.annotator + "'"});
        }
        check_label_map(ann.labels, "annotation by '" + ann.annotator + "'", article,
                        p.index, report.errors);
      }
      if (p.adjudicated) {
        check_label_map(*p.adjudicated, "adjudicated labels", article, p.index,
                        report.errors);
      } else if (p.annotations.empty()) {
        report.warnings.push_back(
            {article.article_id, p.index, "paragraph has no annotations"});
      }
    }
  }
  std::stable_sort(report.errors.begin(), report.errors.end(), issue_less);
  std::stable_sort(report.warnings.begin(), report.warnings.end(), issue_less);
  return report;
}

std::optional<LabelSource> LabelSource::parse(std::string_view text) {
  if (text == "adjudicated") return adjudicated();
  constexpr std::string_view kPrefix = "annotator:";
  if (text.substr(0, kPrefix.size()) == kPrefix && text.size() > kPrefix.size()) {
    return annotator(std::string(text.substr(kPrefix.size())));
  }
  return std::nullopt;
}

std::string LabelSource::to_string() const {
  return annotator_ ? "annotator:" + *annotator_ : "adjudicated";
}

std::optional<LabelMap> LabelSource::labels_of(const Paragraph& paragraph) const {
  if (!annotator_) return paragraph.adjudicated;
  if (const auto* a = paragraph.find_annotation(*annotator_)) return a->labels;
  return std::nullopt;
}

LabelView select_labels(const Corpus& corpus, const LabelSource& source) {
  LabelView view;
  for (const auto& article : corpus.articles) {
    for (const auto& p : article.paragraphs) {
      if (auto labels = source.labels_of(p)) {
        view.items.push_back({&article, &p, *labels});
      } else {
        ++view.skipped;
      }
    }
  }
  return view;
}

}  // namespace polarmeter::corpus
