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

#ifndef POLARMETER_ANALYTICS_HPP_
#define POLARMETER_ANALYTICS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polarmeter/corpus.hpp"

namespace polarmeter::analytics {

enum class Level { kParagraph, kArticle };

// Paragraph-level co-occurrence denominator: paragraphs with at least one
// non-irrelevant label, or every paragraph carrying the label source.
enum class Denominator { kLabeled, kAll };

struct Options {
  corpus::LabelSource source = corpus::LabelSource::adjudicated();
  Denominator denominator = Denominator::kLabeled;
  // Divergent articles must contain both a liberal and a conservative label.
  bool strict_divergence = false;
  int jobs = 1;
};

struct CountRow {
  std::string outlet;
  std::size_t docs = 0;
  std::array<std::size_t, 3> per_dimension{};  // indexed by corpus::Dimension

  std::size_t total() const {
    return per_dimension[0] + per_dimension[1] + per_dimension[2];
  }
};

// Rows sorted by outlet; `totals` holds column sums with outlet "Total".
struct CountTable {
  std::vector<CountRow> rows;
  CountRow totals;
};

// Paragraph-dimension labels other than `irrelevant`, per outlet.
CountTable label_counts(const corpus::Corpus& corpus, const Options& options = {});

struct LeanShares {
  double liberal = 0.0;
  double neutral = 0.0;
  double conservative = 0.0;
};

struct OutletDistribution {
  std::string outlet;
  std::size_t labeled = 0;
  std::optional<LeanShares> fractions;  // absent when `labeled` is 0
};

std::vector<OutletDistribution> label_distribution(const corpus::Corpus& corpus,
                                                   corpus::Dimension dimension,
                                                   const Options& options = {});

struct Cell {
  corpus::Dimension dimension;
  corpus::Label label;
};

inline constexpr std::size_t kCellCount = 9;

// economic-{L,N,C}, social-{L,N,C}, foreign-{L,N,C}.
std::array<Cell, kCellCount> cooccurrence_axis();

// cell(a, b) is the share of units carrying both a and b; the diagonal is
// therefore the marginal share of a cell. Units are paragraphs or articles.
struct CooccurrenceMatrix {
  Level level = Level::kParagraph;
  std::array<Cell, kCellCount> axis = cooccurrence_axis();
  std::array<std::array<std::size_t, kCellCount>, kCellCount> counts{};
  std::array<std::array<double, kCellCount>, kCellCount> percent{};
  std::size_t denominator = 0;
};

CooccurrenceMatrix cooccurrence(const corpus::Corpus& corpus, Level level,
                                const Options& options = {});

struct DivergenceStats {
  std::size_t articles = 0;
  std::size_t divergent = 0;
  double pct_divergent = 0.0;
  // Mean over divergent articles of each article's label proportions, in
  // percent. Absent when no article is divergent.
  std::optional<LeanShares> shares;
};

// An article is divergent when its non-irrelevant scores take at least two
// distinct values (strict: both -1 and +1 occur).
DivergenceStats divergent_article_stats(const corpus::Corpus& corpus,
                                        const Options& options = {});

}  // namespace polarmeter::analytics

#endif  // POLARMETER_ANALYTICS_HPP_
