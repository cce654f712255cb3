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

#include "polarmeter/analytics.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

#include "polarmeter/parallel.hpp"

namespace polarmeter::analytics {

using corpus::Corpus;
using corpus::Dimension;
using corpus::Label;
using corpus::LabelMap;

namespace {

using CellMask = std::uint16_t;

std::size_t cell_index(Dimension d, Label l) {
  return corpus::index_of(d) * 3 + corpus::index_of(l);
}

CellMask cell_mask(const LabelMap& labels) {
  CellMask mask = 0;
  for (Dimension d : corpus::kDimensions) {
    const auto l = labels.get(d);
    if (!l || *l == Label::kIrrelevant) continue;
    mask |= static_cast<CellMask>(1u << cell_index(d, *l));
  }
  return mask;
}

// Paragraph label maps for the source, grouped by article in corpus order.
std::vector<std::vector<LabelMap>> labels_by_article(const Corpus& corpus,
                                                     const corpus::LabelSource& source) {
  std::vector<std::vector<LabelMap>> out(corpus.articles.size());
  for (std::size_t i = 0; i < corpus.articles.size(); ++i) {
    for (const auto& p : corpus.articles[i].paragraphs) {
      if (auto labels = source.labels_of(p)) out[i].push_back(*labels);
    }
  }
  return out;
}

double percent(std::size_t count, std::size_t denominator) {
  return denominator == 0 ? 0.0
                          : 100.0 * static_cast<double>(count) / static_cast<double>(denominator);
}

}  // namespace

CountTable label_counts(const Corpus& corpus, const Options& options) {
  std::map<std::string, CountRow> rows;
  for (const auto& article : corpus.articles) {
    CountRow& row = rows[article.outlet];
    row.outlet = article.outlet;
    ++row.docs;
    for (const auto& p : article.paragraphs) {
      const auto labels = options.source.labels_of(p);
      if (!labels) continue;
      for (Dimension d : corpus::kDimensions) {
        if (labels->score(d)) ++row.per_dimension[corpus::index_of(d)];
      }
    }
  }
  CountTable table;
  table.totals.outlet = "Total";
  for (auto& [outlet, row] : rows) {
    table.totals.docs += row.docs;
    for (std::size_t d = 0; d < 3; ++d) table.totals.per_dimension[d] += row.per_dimension[d];
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::vector<OutletDistribution> label_distribution(const Corpus& corpus, Dimension dimension,
                                                   const Options& options) {
  std::map<std::string, std::array<std::size_t, 3>> tallies;
  for (const auto& article : corpus.articles) {
    auto& tally = tallies[article.outlet];
    for (const auto& p : article.paragraphs) {
      const auto labels = options.source.labels_of(p);
      if (!labels) continue;
      const auto l = labels->get(dimension);
      if (!l || *l == Label::kIrrelevant) continue;
      ++tally[corpus::index_of(*l)];
    }
  }
  std::vector<OutletDistribution> out;
  for (const auto& [outlet, tally] : tallies) {
    OutletDistribution dist;
    dist.outlet = outlet;
    dist.labeled = tally[0] + tally[1] + tally[2];
    if (dist.labeled > 0) {
      const double n = static_cast<double>(dist.labeled);
      dist.fractions = LeanShares{static_cast<double>(tally[0]) / n,
                                  static_cast<double>(tally[1]) / n,
                                  static_cast<double>(tally[2]) / n};
    }
    out.push_back(std::move(dist));
  }
  return out;
}

std::array<Cell, kCellCount> cooccurrence_axis() {
  std::array<Cell, kCellCount> axis{};
  std::size_t i = 0;
  for (Dimension d : corpus::kDimensions) {
    for (Label l : corpus::kLeanLabels) axis[i++] = Cell{d, l};
  }
  return axis;
}

CooccurrenceMatrix cooccurrence(const Corpus& corpus, Level level, const Options& options) {
  const auto grouped = labels_by_article(corpus, options.source);

  // One mask per counting unit; computed per article so work can be split.
  std::vector<std::vector<CellMask>> unit_masks(grouped.size());
  parallel_for(grouped.size(), options.jobs, [&](std::size_t i) {
    if (level == Level::kParagraph) {
      for (const auto& labels : grouped[i]) unit_masks[i].push_back(cell_mask(labels));
    } else {
      CellMask mask = 0;
      for (const auto& labels : grouped[i]) mask |= cell_mask(labels);
      unit_masks[i].push_back(mask);
    }
  });

  CooccurrenceMatrix m;
  m.level = level;
  for (const auto& masks : unit_masks) {
    for (CellMask mask : masks) {
      if (level == Level::kArticle || options.denominator == Denominator::kAll || mask != 0) {
        ++m.denominator;
      }
      for (std::size_t a = 0; a < kCellCount; ++a) {
        if (!(mask & (1u << a))) continue;
        for (std::size_t b = 0; b < kCellCount; ++b) {
          if (mask & (1u << b)) ++m.counts[a][b];
        }
      }
    }
  }
  for (std::size_t a = 0; a < kCellCount; ++a) {
    for (std::size_t b = 0; b < kCellCount; ++b) {
      m.percent[a][b] = percent(m.counts[a][b], m.denominator);
    }
  }
  return m;
}

DivergenceStats divergent_article_stats(const Corpus& corpus, const Options& options) {
  const auto grouped = labels_by_article(corpus, options.source);

  struct ArticleTally {
    bool divergent = false;
    LeanShares proportions;
  };
  std::vector<ArticleTally> tallies(grouped.size());
  parallel_for(grouped.size(), options.jobs, [&](std::size_t i) {
    std::array<std::size_t, 3> counts{};  // liberal, neutral, conservative
    for (const auto& labels : grouped[i]) {
      for (Dimension d : corpus::kDimensions) {
        if (auto s = labels.score(d)) ++counts[static_cast<std::size_t>(*s + 1)];
      }
    }
    const std::size_t distinct = (counts[0] > 0) + (counts[1] > 0) + (counts[2] > 0);
    const bool divergent = options.strict_divergence ? counts[0] > 0 && counts[2] > 0
                                                     : distinct >= 2;
    if (!divergent) return;
    const double n = static_cast<double>(counts[0] + counts[1] + counts[2]);
    tallies[i].divergent = true;
    tallies[i].proportions = {static_cast<double>(counts[0]) / n,
                              static_cast<double>(counts[1]) / n,
                              static_cast<double>(counts[2]) / n};
  });

  DivergenceStats stats;
  stats.articles = corpus.articles.size();
  LeanShares sum;
  for (const auto& t : tallies) {
    if (!t.divergent) continue;
    ++stats.divergent;
    sum.liberal += t.proportions.liberal;
    sum.neutral += t.proportions.neutral;
    sum.conservative += t.proportions.conservative;
  }
  stats.pct_divergent = percent(stats.divergent, stats.articles);
  if (stats.divergent > 0) {
    const double k = static_cast<double>(stats.divergent);
    stats.shares = LeanShares{100.0 * sum.liberal / k, 100.0 * sum.neutral / k,
                              100.0 * sum.conservative / k};
  }
  return stats;
}

}  // namespace polarmeter::analytics
