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
#include <cmath>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "polarmeter/error.hpp"
#include "polarmeter/random.hpp"
#include "polarmeter/topicmodel.hpp"

namespace polarmeter::topicmodel {
namespace {

const std::vector<std::string> kVocabA = {"budget", "deficit", "revenue", "tax", "tariff"};
const std::vector<std::string> kVocabB = {"classroom", "pupil", "school", "teacher", "tuition"};

// K = 2 model whose topics put all mass on disjoint vocabularies.
LdaModel two_topic_model() {
  LdaModel m;
  m.num_topics = 2;
  m.alpha = 0.5;
  m.beta = 0.01;
  m.iterations = 1;
  m.vocabulary = kVocabA;
  m.vocabulary.insert(m.vocabulary.end(), kVocabB.begin(), kVocabB.end());
  std::sort(m.vocabulary.begin(), m.vocabulary.end());
  m.phi.assign(2, std::vector<double>(m.vocabulary.size(), 0.0));
  for (std::size_t w = 0; w < m.vocabulary.size(); ++w) {
    const bool in_a =
        std::find(kVocabA.begin(), kVocabA.end(), m.vocabulary[w]) != kVocabA.end();
    m.phi[in_a ? 0 : 1][w] = 1.0 / 5.0;
  }
  return m;
}

std::vector<Document> two_topic_sentences(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Document> out;
  for (int s = 0; s < 10; ++s) {
    const auto& vocab = s < 5 ? kVocabA : kVocabB;
    Document d;
    for (int t = 0; t < 8; ++t) d.push_back(vocab[rng.below(vocab.size())]);
    out.push_back(d);
  }
  return out;
}

std::string join_sentences(const std::vector<Document>& sentences) {
  std::string text;
  for (const auto& s : sentences) {
    for (std::size_t i = 0; i < s.size(); ++i) text += (i ? " " : "") + s[i];
    text += ". ";
  }
  return text;
}

void expect_rows_sum_to_one(const std::vector<std::vector<double>>& rows) {
  for (const auto& r : rows) {
    EXPECT_NEAR(std::accumulate(r.begin(), r.end(), 0.0), 1.0, 1e-9);
    for (double v : r) EXPECT_GE(v, 0.0);
  }
}

TEST(Lda, SingleWordSingleTopic) {
  LdaParams p;
  p.topics = 1;
  p.iterations = 5;
  const std::vector<Document> docs = {{"budget"}};
  const auto m = lda_fit(docs, p);
  ASSERT_EQ(m.theta.size(), 1u);
  EXPECT_DOUBLE_EQ(m.theta[0][0], 1.0);
  EXPECT_DOUBLE_EQ(m.phi[0][0], 1.0);
  EXPECT_DOUBLE_EQ(m.alpha, 50.0);
  const auto top = top_words(m, 0, 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].first, "budget");
  EXPECT_TRUE(top_words(m, 0, 0).empty());
}

TEST(Lda, DisjointVocabulariesSeparate) {
  std::vector<Document> docs = {{}, {}};
  for (int r = 0; r < 20; ++r) {
    docs[0].push_back(r % 2 ? "tax" : "budget");
    docs[1].push_back(r % 2 ? "school" : "teacher");
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    LdaParams p;
    p.topics = 2;
    p.alpha = 0.1;
    p.iterations = 200;
    p.seed = seed;
    const auto m = lda_fit(docs, p);
    const auto dominant = [&](std::size_t d) {
      return std::max_element(m.theta[d].begin(), m.theta[d].end()) - m.theta[d].begin();
    };
    EXPECT_NE(dominant(0), dominant(1));
    for (std::size_t k = 0; k < 2; ++k) {
      const auto top = top_words(m, k, 2);
      const std::set<std::string> words = {top[0].first, top[1].first};
      EXPECT_TRUE(words == std::set<std::string>({"budget", "tax"}) ||
                  words == std::set<std::string>({"school", "teacher"}));
    }
  }
}

TEST(Lda, RowsNormalizedAndAssignmentsInRange) {
  Rng rng(3);
  std::vector<Document> docs(12);
  for (auto& d : docs) {
    for (int t = 0; t < 15; ++t) d.push_back("w" + std::to_string(rng.below(30)));
  }
  LdaParams p;
  p.topics = 5;
  p.iterations = 50;
  const auto m = lda_fit(docs, p);
  expect_rows_sum_to_one(m.phi);
  expect_rows_sum_to_one(m.theta);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    ASSERT_EQ(m.assignments[d].size(), docs[d].size());
    for (int z : m.assignments[d]) {
      EXPECT_GE(z, 0);
      EXPECT_LT(z, 5);
    }
  }
}

TEST(Lda, BitDeterministicPerSeed) {
  Rng rng(4);
  std::vector<Document> docs(10);
  for (auto& d : docs) {
    for (int t = 0; t < 12; ++t) d.push_back("w" + std::to_string(rng.below(25)));
  }
  LdaParams p;
  p.topics = 4;
  p.iterations = 60;
  const auto a = lda_fit(docs, p);
  const auto b = lda_fit(docs, p);
  EXPECT_EQ(a.assignments, b.assignments);
  EXPECT_EQ(a.phi, b.phi);
  EXPECT_EQ(a.theta, b.theta);
  p.seed = 8;
  EXPECT_NE(lda_fit(docs, p).assignments, a.assignments);
}

TEST(Lda, ConditionalsAreProbabilities) {
  std::vector<Document> docs = {{"a", "b", "c", "a"}, {"c", "d", "d"}, {"a", "d"}};
  LdaParams p;
  p.topics = 3;
  p.iterations = 30;
  p.check_conditionals = true;
  EXPECT_NO_THROW(lda_fit(docs, p));
}

TEST(Lda, Errors) {
  LdaParams p;
  EXPECT_THROW(lda_fit(std::vector<Document>{}, p), InvalidArgument);
  EXPECT_THROW(lda_fit(std::vector<Document>{{"a"}, {}}, p), InvalidArgument);
  p.topics = 0;
  EXPECT_THROW(lda_fit(std::vector<Document>{{"a"}}, p), InvalidArgument);
  p.topics = 1;
  p.iterations = 0;
  EXPECT_THROW(lda_fit(std::vector<Document>{{"a"}}, p), InvalidArgument);
}

TEST(Lda, TopWordsMatchSortOracle) {
  Rng rng(5);
  std::vector<Document> docs(15);
  for (auto& d : docs) {
    for (int t = 0; t < 10; ++t) d.push_back("w" + std::to_string(rng.below(40)));
  }
  LdaParams p;
  p.topics = 4;
  p.iterations = 40;
  const auto m = lda_fit(docs, p);
  for (std::size_t k = 0; k < 4; ++k) {
    std::vector<std::pair<double, std::string>> all;
    for (std::size_t w = 0; w < m.vocabulary.size(); ++w) all.push_back({-m.phi[k][w], m.vocabulary[w]});
    std::sort(all.begin(), all.end());
    const auto top = top_words(m, k, 10);
    ASSERT_EQ(top.size(), 10u);
    for (std::size_t i = 0; i < 10; ++i) {
      EXPECT_EQ(top[i].first, all[i].second);
      EXPECT_EQ(top[i].second, -all[i].first);
    }
  }
  EXPECT_THROW(top_words(m, 4, 1), InvalidArgument);
}

TEST(Lda, SaveLoadRoundTrip) {
  std::vector<Document> docs = {{"tax", "budget", "tax"}, {"school", "teacher"}};
  LdaParams p;
  p.topics = 2;
  p.iterations = 20;
  const auto m = lda_fit(docs, p);
  std::stringstream buf;
  save_model(buf, m);
  const auto back = load_model(buf);
  EXPECT_EQ(back.num_topics, m.num_topics);
  EXPECT_EQ(back.vocabulary, m.vocabulary);
  EXPECT_EQ(back.phi, m.phi);
  EXPECT_EQ(back.theta, m.theta);
  EXPECT_EQ(back.alpha, m.alpha);
  EXPECT_EQ(back.seed, m.seed);
  std::stringstream bad("{\"format\": \"other\"}");
  EXPECT_THROW(load_model(bad), ParseError);
}

TEST(Tiling, TwoTopicDocumentBoundaryAfterFifthSentence) {
  const auto model = two_topic_model();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    TilingParams p;
    p.seed = seed;
    const auto r = topic_tiling(two_topic_sentences(seed), model, p);
    EXPECT_EQ(r.boundaries, (std::vector<std::size_t>{4})) << "seed " << seed;
    ASSERT_EQ(r.similarities.size(), 9u);
    EXPECT_NEAR(r.similarities[4], 0.0, 1e-12);
  }
}

TEST(Tiling, IdenticalSentencesHaveNoBoundaries) {
  const auto model = two_topic_model();
  const std::vector<Document> same(8, Document{"tax", "school", "budget"});
  const auto r = topic_tiling(same, model, TilingParams{});
  EXPECT_TRUE(r.boundaries.empty());
  for (double d : r.depths) EXPECT_EQ(d, 0.0);
}

TEST(Tiling, ShortInputs) {
  const auto model = two_topic_model();
  EXPECT_TRUE(topic_tiling(std::vector<Document>{{"tax"}}, model, TilingParams{}).boundaries.empty());
  const auto two = topic_tiling(std::vector<Document>{{"tax"}, {"school"}}, model, TilingParams{});
  EXPECT_EQ(two.similarities.size(), 1u);
  EXPECT_LE(two.boundaries.size(), 1u);
  const std::vector<std::vector<double>> counts = {{3, 0}, {0, 3}};
  const auto t = tile_topic_counts(counts, 2, 0.5);
  EXPECT_TRUE(t.boundaries.empty());  // a lone gap has no peak on either side
}

TEST(Tiling, InvariantUnderTopicRelabeling) {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.below(15), k = 2 + rng.below(4);
    std::vector<std::vector<double>> counts(n, std::vector<double>(k));
    for (auto& row : counts) {
      for (double& v : row) v = static_cast<double>(rng.below(4));
    }
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    auto permuted = counts;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t j = 0; j < k; ++j) permuted[s][perm[j]] = counts[s][j];
    }
    const auto a = tile_topic_counts(counts, 2, 0.5);
    const auto b = tile_topic_counts(permuted, 2, 0.5);
    EXPECT_EQ(a.boundaries, b.boundaries);
    for (std::size_t g = 0; g < a.similarities.size(); ++g) {
      EXPECT_NEAR(a.similarities[g], b.similarities[g], 1e-12);
    }
  }
}

TEST(Tiling, BoundariesStrictlyIncreasingAndInRange) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    std::vector<std::vector<double>> counts(n, std::vector<double>(3));
    for (auto& row : counts) {
      for (double& v : row) v = static_cast<double>(rng.below(5));
    }
    const auto r = tile_topic_counts(counts, 1 + rng.below(3), 0.5, rng.below(4));
    for (std::size_t i = 0; i < r.boundaries.size(); ++i) {
      EXPECT_LT(r.boundaries[i], n - 1);
      if (i) EXPECT_LT(r.boundaries[i - 1], r.boundaries[i]);
    }
  }
}

TEST(Tiling, MaxSegmentsKeepsDeepestBoundaries) {
  const std::vector<std::vector<double>> counts = {{4, 0}, {4, 0}, {0, 4}, {0, 4},
                                                   {4, 0}, {4, 0}, {0, 4}, {0, 4}};
  const auto all = tile_topic_counts(counts, 1, 0.5);
  EXPECT_EQ(all.boundaries, (std::vector<std::size_t>{1, 3, 5}));
  EXPECT_EQ(tile_topic_counts(counts, 1, 0.5, 2).boundaries.size(), 1u);
}

TEST(Sentences, SplitRule) {
  EXPECT_EQ(split_sentences("One. Two!  Three? four"),
            (std::vector<std::string>{"One.", "Two!", "Three?", "four"}));
  EXPECT_EQ(split_sentences("No terminator here"), (std::vector<std::string>{"No terminator here"}));
  EXPECT_EQ(split_sentences("Pi is 3.14 today."), (std::vector<std::string>{"Pi is 3.14 today."}));
  EXPECT_TRUE(split_sentences("   ").empty());
}

TEST(Segment, Cases) {
  const auto model = two_topic_model();
  EXPECT_EQ(segment_article("Only one sentence.", model, TilingParams{}).size(), 1u);
  EXPECT_EQ(segment_article("tax budget and no terminator", model, TilingParams{}).size(), 1u);
  EXPECT_THROW(segment_article("  ", model, TilingParams{}), InvalidArgument);
  const auto paragraphs = segment_article(join_sentences(two_topic_sentences(3)), model, TilingParams{});
  ASSERT_EQ(paragraphs.size(), 2u);
  EXPECT_EQ(split_sentences(paragraphs[0]).size(), 5u);
}

TEST(Curate, KeepAndReject) {
  const std::vector<std::string> texts = {
      "The federal government and Congress agreed.",
      "Congress debated the state budget today.",
      "Local news only."};
  CurationRules rules;
  rules.include_terms = {"federal", "congress"};
  rules.exclude_phrases = {"state budget"};
  const auto r = curate(texts, rules);
  EXPECT_EQ(r.kept, (std::vector<std::size_t>{0}));
  ASSERT_EQ(r.audit.size(), 3u);
  EXPECT_EQ(r.audit[0].rule_id, "include:federal");
  EXPECT_EQ(r.audit[0].rejected, 2u);
  EXPECT_EQ(r.audit[1].rejected, 1u);
  EXPECT_EQ(r.audit[2].rule_id, "exclude:state budget");
  EXPECT_EQ(r.audit[2].rejected, 1u);
  EXPECT_EQ(r.total, 3u);
}

std::vector<std::size_t> curate_oracle(const std::vector<std::string>& texts,
                                       const CurationRules& rules) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto words = oracle::split_words(texts[i]);
    bool keep = true;
    for (const auto& term : rules.include_terms) {
      keep = keep && std::find(words.begin(), words.end(), term) != words.end();
    }
    for (const auto& phrase : rules.exclude_phrases) {
      keep = keep && !oracle::contains_ci(texts[i], phrase);
    }
    if (keep) kept.push_back(i);
  }
  return kept;
}

TEST(Curate, MatchesRefilterOracleAndIsMonotone) {
  const std::vector<std::string> pool = {"federal", "congress", "State", "budget", "letters",
                                         "to",      "the",      "editor", "senate", "war"};
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> texts(6);
    for (auto& t : texts) {
      for (int w = 0; w < 8; ++w) t += pool[rng.below(pool.size())] + (rng.below(3) ? " " : ", ");
    }
    CurationRules rules;
    if (rng.below(2)) rules.include_terms.push_back("federal");
    if (rng.below(2)) rules.include_terms.push_back("senate");
    if (rng.below(2)) rules.exclude_phrases.push_back("state budget");
    const auto r = curate(texts, rules);
    EXPECT_EQ(r.kept, curate_oracle(texts, rules));

    auto stricter = rules;
    stricter.exclude_phrases.push_back("to the");
    const auto s = curate(texts, stricter);
    EXPECT_TRUE(std::includes(r.kept.begin(), r.kept.end(), s.kept.begin(), s.kept.end()));
    EXPECT_EQ(s.kept, curate_oracle(texts, stricter));
  }
}

TEST(Curate, EmptyRulesKeepEverything) {
  const std::vector<std::string> texts = {"a", "", "b c"};
  const auto r = curate(texts, CurationRules{});
  EXPECT_EQ(r.kept, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(r.audit.empty());
}

}  // namespace
}  // namespace polarmeter::topicmodel
