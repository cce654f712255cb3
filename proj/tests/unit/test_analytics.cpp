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

#include <gtest/gtest.h>

#include <cstring>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "polarmeter/analytics.hpp"

namespace polarmeter::analytics {
namespace {

using corpus::Corpus;
using corpus::Dimension;
using corpus::LabelMap;
using testing::C;
using testing::L;
using testing::make_article;
using testing::N;
using testing::X;

std::size_t cell(Dimension d, corpus::Label l) {
  return corpus::index_of(d) * 3 + corpus::index_of(l);
}

TEST(Counts, SingleParagraph) {
  Corpus c;
  c.articles.push_back(make_article("a", "NYT", 1950, {LabelMap(L, X, X)}));
  const auto t = label_counts(c);
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].per_dimension, (std::array<std::size_t, 3>{1, 0, 0}));
  EXPECT_EQ(t.rows[0].docs, 1u);
  EXPECT_EQ(t.totals.total(), 1u);
  EXPECT_EQ(t.totals.outlet, "Total");
}

TEST(Counts, ThreeArticleCorpusMatchesTally) {
  Corpus c;
  c.articles.push_back(make_article("a", "NYT", 1950, {LabelMap(L, X, N), LabelMap(X, X, X)}));
  c.articles.push_back(make_article("b", "WSJ", 1951, {LabelMap(C, C, C)}));
  c.articles.push_back(make_article("c", "NYT", 1952, {LabelMap(N, L, X)}));
  const auto t = label_counts(c);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].outlet, "NYT");
  EXPECT_EQ(t.rows[0].docs, 2u);
  EXPECT_EQ(t.rows[0].per_dimension, (std::array<std::size_t, 3>{2, 1, 1}));
  EXPECT_EQ(t.rows[1].per_dimension, (std::array<std::size_t, 3>{1, 1, 1}));
  EXPECT_EQ(t.totals.per_dimension, (std::array<std::size_t, 3>{3, 2, 2}));
  EXPECT_EQ(t.totals.docs, 3u);
}

TEST(Counts, RandomCorporaMatchOracle) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Corpus c = testing::random_corpus(seed);
    const auto tally = oracle::tally_outlets(c);
    const auto t = label_counts(c);
    ASSERT_EQ(t.rows.size(), tally.size());
    std::array<std::size_t, 3> sums{};
    std::size_t docs = 0;
    for (const auto& row : t.rows) {
      const auto& o = tally.at(row.outlet);
      EXPECT_EQ(row.docs, o.docs);
      EXPECT_EQ(row.per_dimension, o.dims);
      for (int d = 0; d < 3; ++d) sums[d] += row.per_dimension[d];
      docs += row.docs;
    }
    EXPECT_EQ(t.totals.per_dimension, sums);
    EXPECT_EQ(t.totals.docs, docs);
  }
}

TEST(Distribution, TwoLiberalOneConservative) {
  Corpus c;
  c.articles.push_back(
      make_article("a", "CT", 1950, {LabelMap(L, X, X), LabelMap(L, X, X), LabelMap(C, X, X)}));
  c.articles.push_back(make_article("b", "TM", 1950, {LabelMap(X, L, L)}));
  const auto d = label_distribution(c, Dimension::kEconomic);
  ASSERT_EQ(d.size(), 2u);
  ASSERT_TRUE(d[0].fractions.has_value());
  EXPECT_DOUBLE_EQ(d[0].fractions->liberal, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(d[0].fractions->neutral, 0.0);
  EXPECT_DOUBLE_EQ(d[0].fractions->conservative, 1.0 / 3.0);
  EXPECT_EQ(d[1].outlet, "TM");
  EXPECT_FALSE(d[1].fractions.has_value());
}

TEST(Distribution, RandomCorporaMatchOracle) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Corpus c = testing::random_corpus(seed);
    const auto tally = oracle::tally_outlets(c);
    for (Dimension dim : corpus::kDimensions) {
      const auto di = static_cast<std::size_t>(dim);
      for (const auto& row : label_distribution(c, dim)) {
        const auto& t = tally.at(row.outlet).by_label[di];
        const std::size_t n = t[0] + t[1] + t[2];
        EXPECT_EQ(row.labeled, n);
        if (n == 0) {
          EXPECT_FALSE(row.fractions.has_value());
          continue;
        }
        EXPECT_NEAR(row.fractions->liberal, double(t[0]) / double(n), 1e-15);
        EXPECT_NEAR(row.fractions->neutral, double(t[1]) / double(n), 1e-15);
        EXPECT_NEAR(row.fractions->conservative, double(t[2]) / double(n), 1e-15);
      }
    }
  }
}

TEST(Cooccurrence, SingleParagraphCell) {
  Corpus c;
  c.articles.push_back(make_article("a", "CT", 1950, {LabelMap(N, X, L)}));
  const auto m = cooccurrence(c, Level::kParagraph);
  const auto a = cell(Dimension::kEconomic, N), b = cell(Dimension::kForeign, L);
  EXPECT_DOUBLE_EQ(m.percent[a][b], 100.0);
  EXPECT_DOUBLE_EQ(m.percent[b][a], 100.0);
  EXPECT_DOUBLE_EQ(m.percent[a][a], 100.0);
  EXPECT_DOUBLE_EQ(m.percent[a][cell(Dimension::kSocial, L)], 0.0);
}

TEST(Cooccurrence, LevelsDifferAcrossParagraphs) {
  Corpus c;
  c.articles.push_back(make_article("a", "CT", 1950, {LabelMap(C, X, X), LabelMap(X, L, X)}));
  const auto a = cell(Dimension::kEconomic, C), b = cell(Dimension::kSocial, L);
  EXPECT_DOUBLE_EQ(cooccurrence(c, Level::kArticle).percent[a][b], 100.0);
  EXPECT_DOUBLE_EQ(cooccurrence(c, Level::kParagraph).percent[a][b], 0.0);
}

TEST(Cooccurrence, DenominatorChoice) {
  Corpus c;
  c.articles.push_back(make_article("a", "CT", 1950, {LabelMap(C, X, X), LabelMap(X, X, X)}));
  const auto a = cell(Dimension::kEconomic, C);
  EXPECT_DOUBLE_EQ(cooccurrence(c, Level::kParagraph).percent[a][a], 100.0);
  Options all;
  all.denominator = Denominator::kAll;
  EXPECT_DOUBLE_EQ(cooccurrence(c, Level::kParagraph, all).percent[a][a], 50.0);
}

TEST(Cooccurrence, RandomCorporaMatchDoubleLoopOracle) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Corpus c = testing::random_corpus(seed, 10);
    Options all;
    all.denominator = Denominator::kAll;
    const struct {
      CooccurrenceMatrix got;
      oracle::CoocOracle want;
    } cases[] = {
        {cooccurrence(c, Level::kParagraph), oracle::cooccurrence_paragraphs(c, true)},
        {cooccurrence(c, Level::kParagraph, all), oracle::cooccurrence_paragraphs(c, false)},
        {cooccurrence(c, Level::kArticle), oracle::cooccurrence_articles(c)},
    };
    for (const auto& k : cases) {
      EXPECT_EQ(k.got.denominator, k.want.denominator);
      for (std::size_t a = 0; a < kCellCount; ++a) {
        for (std::size_t b = 0; b < kCellCount; ++b) {
          EXPECT_EQ(k.got.counts[a][b], k.want.counts[a][b]);
          EXPECT_NEAR(k.got.percent[a][b],
                      100.0 * double(k.want.counts[a][b]) / double(k.want.denominator), 1e-12);
        }
      }
    }
  }
}

TEST(Cooccurrence, SymmetricAndBounded) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Corpus c = testing::random_corpus(seed);
    for (Level level : {Level::kParagraph, Level::kArticle}) {
      const auto m = cooccurrence(c, level);
      for (std::size_t a = 0; a < kCellCount; ++a) {
        for (std::size_t b = 0; b < kCellCount; ++b) {
          EXPECT_EQ(m.percent[a][b], m.percent[b][a]);
          EXPECT_GE(m.percent[a][b], 0.0);
          EXPECT_LE(m.percent[a][b], 100.0);
          EXPECT_LE(m.counts[a][b], std::min(m.counts[a][a], m.counts[b][b]));
        }
      }
    }
  }
}

TEST(Cooccurrence, SingleParagraphArticlesLevelsCoincide) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Corpus c = testing::random_corpus(seed);
    for (auto& a : c.articles) a.paragraphs.resize(1);
    Options all;
    all.denominator = Denominator::kAll;
    const auto p = cooccurrence(c, Level::kParagraph, all);
    const auto a = cooccurrence(c, Level::kArticle, all);
    EXPECT_EQ(p.counts, a.counts);
    EXPECT_EQ(p.percent, a.percent);
  }
}

TEST(Cooccurrence, JobCountDoesNotChangeResult) {
  const Corpus c = testing::random_corpus(77, 200);
  Options one, many;
  many.jobs = 4;
  for (Level level : {Level::kParagraph, Level::kArticle}) {
    const auto a = cooccurrence(c, level, one);
    const auto b = cooccurrence(c, level, many);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(std::memcmp(&a.percent, &b.percent, sizeof(a.percent)), 0);
  }
}

TEST(Divergence, UniformArticleIsNotDivergent) {
  Corpus c;
  c.articles.push_back(make_article("a", "CT", 1950, {LabelMap(L, L, X), LabelMap(X, L, L)}));
  const auto s = divergent_article_stats(c);
  EXPECT_EQ(s.divergent, 0u);
  EXPECT_DOUBLE_EQ(s.pct_divergent, 0.0);
  EXPECT_FALSE(s.shares.has_value());
}

TEST(Divergence, NeutralAgainstLeanCountsUnlessStrict) {
  Corpus c;
  c.articles.push_back(make_article("a", "CT", 1950, {LabelMap(N, X, X), LabelMap(X, C, X)}));
  c.articles.push_back(make_article("b", "CT", 1950, {LabelMap(L, C, C), LabelMap(C, X, X)}));
  const auto s = divergent_article_stats(c);
  EXPECT_EQ(s.divergent, 2u);
  EXPECT_DOUBLE_EQ(s.pct_divergent, 100.0);
  // a: (0, 1/2, 1/2); b: (1/4, 0, 3/4).
  EXPECT_DOUBLE_EQ(s.shares->liberal, 12.5);
  EXPECT_DOUBLE_EQ(s.shares->neutral, 25.0);
  EXPECT_DOUBLE_EQ(s.shares->conservative, 62.5);
  Options strict;
  strict.strict_divergence = true;
  const auto t = divergent_article_stats(c, strict);
  EXPECT_EQ(t.divergent, 1u);
  EXPECT_DOUBLE_EQ(t.pct_divergent, 50.0);
}

TEST(Divergence, RandomCorporaMatchPairOracle) {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const Corpus c = testing::random_corpus(seed, 4);
    for (bool strict : {false, true}) {
      Options o;
      o.strict_divergence = strict;
      const auto got = divergent_article_stats(c, o);
      const auto want = oracle::divergence(c, strict);
      EXPECT_EQ(got.divergent, want.divergent);
      EXPECT_NEAR(got.pct_divergent, want.pct, 1e-12);
      if (!want.divergent) continue;
      ASSERT_TRUE(got.shares.has_value());
      EXPECT_NEAR(got.shares->liberal, want.shares[0], 1e-12);
      EXPECT_NEAR(got.shares->neutral, want.shares[1], 1e-12);
      EXPECT_NEAR(got.shares->conservative, want.shares[2], 1e-12);
      EXPECT_NEAR(got.shares->liberal + got.shares->neutral + got.shares->conservative, 100.0,
                  0.01);
    }
  }
}

TEST(Divergence, JobCountDoesNotChangeResult) {
  const Corpus c = testing::random_corpus(78, 300);
  Options many;
  many.jobs = 8;
  const auto a = divergent_article_stats(c);
  const auto b = divergent_article_stats(c, many);
  EXPECT_EQ(a.divergent, b.divergent);
  EXPECT_EQ(a.shares->liberal, b.shares->liberal);
  EXPECT_EQ(a.shares->neutral, b.shares->neutral);
  EXPECT_EQ(a.shares->conservative, b.shares->conservative);
}

TEST(Sources, AnnotatorSourceReadsAnnotations) {
  Corpus c;
  c.articles.push_back(make_article("a", "CT", 1950, {LabelMap(X, X, X)}));
  c.articles[0].paragraphs[0].annotations.push_back({"A1", LabelMap(L, L, L)});
  Options o;
  o.source = corpus::LabelSource::annotator("A1");
  EXPECT_EQ(label_counts(c, o).totals.total(), 3u);
  EXPECT_EQ(label_counts(c).totals.total(), 0u);
}

}  // namespace
}  // namespace polarmeter::analytics
