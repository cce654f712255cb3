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

// Corpus builders and random generators shared by the test binaries.

#ifndef POLARMETER_TESTS_SUPPORT_FIXTURES_HPP_
#define POLARMETER_TESTS_SUPPORT_FIXTURES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "polarmeter/corpus.hpp"
#include "polarmeter/random.hpp"

namespace polarmeter::testing {

using corpus::AnnotationSet;
using corpus::Article;
using corpus::Corpus;
using corpus::Label;
using corpus::LabelMap;
using corpus::Paragraph;

constexpr Label L = Label::kLiberal;
constexpr Label N = Label::kNeutral;
constexpr Label C = Label::kConservative;
constexpr Label X = Label::kIrrelevant;

inline Paragraph adjudicated_paragraph(std::size_t index, LabelMap labels,
                                       std::string text = "text") {
  Paragraph p;
  p.index = index;
  p.text = std::move(text);
  p.adjudicated = labels;
  return p;
}

inline Article make_article(std::string id, std::string outlet, int year,
                            std::vector<LabelMap> adjudicated) {
  Article a;
  a.article_id = std::move(id);
  a.outlet = std::move(outlet);
  a.year = year;
  for (std::size_t i = 0; i < adjudicated.size(); ++i) {
    a.paragraphs.push_back(adjudicated_paragraph(i, adjudicated[i]));
  }
  return a;
}

inline Label random_label(Rng& rng, double irrelevant_share = 0.35) {
  if (rng.uniform() < irrelevant_share) return Label::kIrrelevant;
  return corpus::kLeanLabels[rng.below(3)];
}

inline LabelMap random_labels(Rng& rng) {
  return LabelMap(random_label(rng), random_label(rng), random_label(rng));
}

// Random adjudicated corpus with up to `max_articles` articles of 1..6
// paragraphs spread over a few outlets and 1947..1974. Each paragraph also
// carries two or three annotator label sets.
inline Corpus random_corpus(std::uint64_t seed, std::size_t max_articles = 30) {
  static const char* kOutlets[] = {"CSM", "CT", "NYT", "TM", "WSJ"};
  static const char* kWords[] = {"tax",    "budget", "school", "defense", "trade",
                                 "wage",   "senate", "deficit", "farm",   "missile",
                                 "health", "federal"};
  Rng rng(seed);
  Corpus c;
  const std::size_t n = 1 + rng.below(max_articles);
  for (std::size_t a = 0; a < n; ++a) {
    Article article;
    article.article_id = "a" + std::to_string(a);
    article.outlet = kOutlets[rng.below(5)];
    article.year = 1947 + static_cast<int>(rng.below(28));
    const std::size_t paragraphs = 1 + rng.below(6);
    for (std::size_t i = 0; i < paragraphs; ++i) {
      Paragraph p;
      p.index = i;
      for (int w = 0; w < 8; ++w) {
        if (w) p.text += ' ';
        p.text += kWords[rng.below(12)];
      }
      p.adjudicated = random_labels(rng);
      const std::size_t annotators = 2 + rng.below(2);
      for (std::size_t k = 0; k < annotators; ++k) {
        p.annotations.push_back({"A" + std::to_string(k + 1), random_labels(rng)});
      }
      article.paragraphs.push_back(std::move(p));
    }
    c.articles.push_back(std::move(article));
  }
  return c;
}

}  // namespace polarmeter::testing

#endif  // POLARMETER_TESTS_SUPPORT_FIXTURES_HPP_
