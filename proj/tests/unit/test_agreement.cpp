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

#include <algorithm>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "polarmeter/agreement.hpp"
#include "polarmeter/error.hpp"
#include "polarmeter/log.hpp"
#include "polarmeter/random.hpp"

namespace polarmeter::agreement {
namespace {

using corpus::Corpus;
using corpus::Dimension;
using corpus::LabelMap;
using testing::C;
using testing::L;
using testing::N;
using testing::X;

ReliabilityMatrix matrix_of(const std::vector<std::vector<int>>& values) {
  ReliabilityMatrix m;
  for (std::size_t i = 0; i < values.size(); ++i) m.units.push_back({"u", i, values[i]});
  return m;
}

std::vector<std::vector<int>> random_units(Rng& rng, std::size_t units, int categories,
                                           std::size_t max_coders, bool allow_missing) {
  std::vector<std::vector<int>> out(units);
  for (auto& u : out) {
    const std::size_t m = allow_missing ? rng.below(max_coders + 1) : max_coders;
    for (std::size_t k = 0; k < m; ++k) {
      u.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(categories))));
    }
  }
  return out;
}

// Corpus where every paragraph carries the given per-annotator economic labels.
Corpus annotated(const std::vector<std::vector<corpus::Label>>& per_paragraph) {
  Corpus c;
  corpus::Article a = testing::make_article("a", "NYT", 1950, {});
  for (std::size_t i = 0; i < per_paragraph.size(); ++i) {
    corpus::Paragraph p;
    p.index = i;
    for (std::size_t k = 0; k < per_paragraph[i].size(); ++k) {
      p.annotations.push_back({"A" + std::to_string(k + 1), LabelMap(per_paragraph[i][k], N, N)});
    }
    a.paragraphs.push_back(p);
  }
  c.articles.push_back(a);
  return c;
}

TEST(BuildReliability, OneUnitPerParagraph) {
  const Corpus c = annotated({{L, C}, {N, N}});
  const auto m = build_reliability(c, Dimension::kEconomic);
  ASSERT_EQ(m.units.size(), 2u);
  EXPECT_EQ(m.units[0].values.size(), 2u);
  EXPECT_EQ(m.units[1].values.size(), 2u);
  EXPECT_EQ(m.label_domain.size(), 4u);
}

TEST(BuildReliability, SingleAnnotationIsUnitOfOne) {
  const auto m = build_reliability(annotated({{L}}), Dimension::kEconomic);
  ASSERT_EQ(m.units.size(), 1u);
  EXPECT_EQ(m.units[0].values.size(), 1u);
}

TEST(BuildReliability, DropIrrelevant) {
  const Corpus c = annotated({{L, X}});
  EXPECT_EQ(build_reliability(c, Dimension::kEconomic, true).units[0].values.size(), 2u);
  EXPECT_EQ(build_reliability(c, Dimension::kEconomic, false).units[0].values.size(), 1u);
}

TEST(Alpha, PerfectAgreementIsOne) {
  const auto r = krippendorff_alpha(matrix_of({{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_DOUBLE_EQ(r.alpha, 1.0);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.pairable_values, 6u);
}

TEST(Alpha, SwappedPairGivesMinusHalf) {
  const auto m = build_reliability(annotated({{L, C}, {C, L}}), Dimension::kEconomic);
  const auto r = krippendorff_alpha(m);
  EXPECT_NEAR(r.observed_disagreement, 1.0, 1e-15);
  EXPECT_NEAR(r.expected_disagreement, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.alpha, -0.5, 1e-15);
}

TEST(Alpha, NoPairableValuesThrows) {
  EXPECT_THROW(krippendorff_alpha(matrix_of({{0}, {}, {1}})), InvalidArgument);
  EXPECT_THROW(krippendorff_alpha(matrix_of({})), InvalidArgument);
}

TEST(Alpha, IdenticalValuesAreDegenerateWithWarning) {
  int warnings = 0;
  auto previous = set_log_sink([&](LogLevel level, std::string_view, std::string_view) {
    if (level == LogLevel::kWarning) ++warnings;
  });
  const auto r = krippendorff_alpha(matrix_of({{2, 2}, {2, 2, 2}, {1}}));
  set_log_sink(previous);
  EXPECT_TRUE(r.degenerate);
  EXPECT_DOUBLE_EQ(r.alpha, 1.0);
  EXPECT_EQ(warnings, 1);
}

TEST(Alpha, SingletonUnitsAreIgnored) {
  const auto a = krippendorff_alpha(matrix_of({{0, 1}, {1, 1}, {2, 0}}));
  const auto b = krippendorff_alpha(matrix_of({{0, 1}, {3}, {1, 1}, {}, {2, 0}}));
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.pairable_units, 3u);
  EXPECT_EQ(b.pairable_units, 3u);
}

TEST(Alpha, MatchesPairEnumerationOracleWithMissingData) {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    auto units = random_units(rng, 1 + rng.below(40), 1 + static_cast<int>(rng.below(5)), 4, true);
    if (std::none_of(units.begin(), units.end(), [](const auto& u) { return u.size() >= 2; })) {
      continue;
    }
    const auto r = krippendorff_alpha(matrix_of(units));
    const auto o = oracle::alpha_by_pairs(units);
    EXPECT_NEAR(r.observed_disagreement, o.observed, 1e-12);
    EXPECT_NEAR(r.expected_disagreement, o.expected, 1e-12);
    EXPECT_NEAR(r.alpha, o.alpha, 1e-10) << "trial " << trial;
  }
}

TEST(Alpha, TwoCodersCompleteDataWithin1e12) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    auto units = random_units(rng, 2 + rng.below(60), 4, 2, false);
    const auto o = oracle::alpha_by_pairs(units);
    if (o.expected == 0.0) continue;
    EXPECT_NEAR(krippendorff_alpha(matrix_of(units)).alpha, o.alpha, 1e-12);
  }
}

TEST(Alpha, InvariantUnderRelabeling) {
  Rng rng(5);
  const std::vector<int> perm = {7, -3, 11, 0};
  for (int trial = 0; trial < 50; ++trial) {
    auto units = random_units(rng, 30, 4, 3, true);
    auto relabeled = units;
    for (auto& u : relabeled) {
      for (int& v : u) v = perm[static_cast<std::size_t>(v)];
    }
    if (std::none_of(units.begin(), units.end(), [](const auto& u) { return u.size() >= 2; })) {
      continue;
    }
    EXPECT_NEAR(krippendorff_alpha(matrix_of(units)).alpha,
                krippendorff_alpha(matrix_of(relabeled)).alpha, 1e-12);
  }
}

TEST(Alpha, InvariantUnderUnitReordering) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    auto units = random_units(rng, 30, 4, 3, false);
    auto shuffled = units;
    rng.shuffle(shuffled);
    for (auto& u : shuffled) rng.shuffle(u);
    EXPECT_NEAR(krippendorff_alpha(matrix_of(units)).alpha,
                krippendorff_alpha(matrix_of(shuffled)).alpha, 1e-12);
  }
}

TEST(Alpha, DuplicationConvergesMonotonically) {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto units = random_units(rng, 12, 3, 2, false);
    const auto base = krippendorff_alpha(matrix_of(units));
    if (base.degenerate || base.observed_disagreement == 0.0) continue;
    std::vector<double> alphas;
    for (int k : {1, 2, 4, 8}) {
      std::vector<std::vector<int>> dup;
      for (int r = 0; r < k; ++r) dup.insert(dup.end(), units.begin(), units.end());
      const auto res = krippendorff_alpha(matrix_of(dup));
      EXPECT_NEAR(res.observed_disagreement, base.observed_disagreement, 1e-12);
      alphas.push_back(res.alpha);
    }
    // D_e shrinks toward its large-sample limit, so alpha decreases with k
    // and the successive steps shrink.
    const double n = static_cast<double>(base.pairable_values);
    const double limit =
        1.0 - base.observed_disagreement / (base.expected_disagreement * (n - 1.0) / n);
    for (std::size_t i = 1; i < alphas.size(); ++i) {
      EXPECT_LT(alphas[i], alphas[i - 1]);
      EXPECT_GT(alphas[i], limit);
      EXPECT_LT(std::abs(alphas[i] - limit), std::abs(alphas[i - 1] - limit));
    }
  }
}

TEST(Disagreements, AgreeingAnnotatorsGiveNone) {
  EXPECT_TRUE(disagreements(annotated({{L, L}, {C, C, C}}), Dimension::kEconomic).empty());
}

TEST(Disagreements, ListsDisagreeingParagraph) {
  const auto d = disagreements(annotated({{L, L}, {N, L}, {C}}), Dimension::kEconomic);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].paragraph_index, 1u);
  EXPECT_EQ(d[0].labels, (std::vector<corpus::Label>{L, N}));
}

TEST(Disagreements, SingleAnnotatorNeverListed) {
  EXPECT_TRUE(disagreements(annotated({{L}, {C}}), Dimension::kEconomic).empty());
}

TEST(Disagreements, SortedByArticleThenParagraph) {
  Corpus c = annotated({{L, C}, {N, C}});
  Corpus d = annotated({{L, C}});
  d.articles[0].article_id = "0";
  c.articles.push_back(d.articles[0]);
  const auto out = disagreements(c, Dimension::kEconomic);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].article_id, "0");
  EXPECT_EQ(out[1].article_id, "a");
  EXPECT_EQ(out[2].paragraph_index, 1u);
}

}  // namespace
}  // namespace polarmeter::agreement
