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

#ifndef POLARMETER_TOPICMODEL_HPP_
#define POLARMETER_TOPICMODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polarmeter/lexical.hpp"

namespace polarmeter::topicmodel {

using lexical::Document;

struct LdaParams {
  std::size_t topics = 50;
  std::optional<double> alpha;  // default 50 / topics
  double beta = 0.01;
  int iterations = 1000;
  std::uint64_t seed = 7;
  // Verify every Gibbs conditional is a probability vector (slow).
  bool check_conditionals = false;
};

struct LdaModel {
  std::size_t num_topics = 0;
  double alpha = 0.0;
  double beta = 0.0;
  int iterations = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> vocabulary;             // sorted
  std::vector<std::vector<double>> phi;            // topics x vocabulary
  std::vector<std::vector<double>> theta;          // documents x topics
  std::vector<std::vector<int>> assignments;       // per document, per token

  std::optional<std::size_t> word_id(std::string_view term) const;
};

// Collapsed Gibbs sampling. phi and theta are the Dirichlet-smoothed
// estimates from the final sampler state:
//   phi[k][w]   = (n_kw + beta) / (n_k + V beta)
//   theta[d][k] = (n_dk + alpha) / (N_d + K alpha)
// Deterministic for a given seed and input. Throws InvalidArgument on an
// empty corpus, an empty document, topics < 1 or iterations < 1.
LdaModel lda_fit(std::span<const Document> documents, const LdaParams& params);

// k most probable terms of a topic, ties by term.
std::vector<std::pair<std::string, double>> top_words(const LdaModel& model, std::size_t topic,
                                                      std::size_t k);

// JSON with num_topics, alpha, beta, iterations, seed, vocabulary, phi and
// theta. Token assignments are not stored.
void save_model(std::ostream& out, const LdaModel& model);
LdaModel load_model(std::istream& in);

// ---------------------------------------------------------------------------
// Topic Tiling

struct TilingParams {
  std::size_t window = 2;
  int inference_iterations = 100;
  int modal_window = 20;  // final iterations over which each token's mode is taken
  double threshold_multiplier = 0.5;
  std::uint64_t seed = 7;
  std::size_t max_segments = 0;  // 0 = unlimited
};

struct SegmentBoundarySet {
  // Gap g separates sentence g from sentence g + 1 (0-based), so a boundary
  // at g starts a new segment with sentence g + 1.
  std::vector<std::size_t> boundaries;
  std::vector<double> similarities;  // per gap
  std::vector<double> depths;        // per gap
  double threshold = 0.0;
};

// Gibbs inference of one topic per token against the fixed model, treating
// all sentences as one document. Each token gets its modal topic over the
// final `modal_window` iterations; out-of-vocabulary tokens get -1.
std::vector<std::vector<int>> infer_token_topics(const LdaModel& model,
                                                 std::span<const Document> sentences,
                                                 const TilingParams& params);

// Boundary selection from per-sentence topic-count vectors: cosine similarity
// of the `window` sentences either side of each gap, TextTiling depth
//   depth_g = (left_peak - sim_g) + (right_peak - sim_g)
// where each peak is reached by climbing while similarity does not drop, and
// a boundary at every local similarity minimum whose depth is positive and
// exceeds mean(depth) - multiplier * stddev(depth).
SegmentBoundarySet tile_topic_counts(std::span<const std::vector<double>> sentence_topics,
                                     std::size_t window, double threshold_multiplier,
                                     std::size_t max_segments = 0);

SegmentBoundarySet topic_tiling(std::span<const Document> sentences, const LdaModel& model,
                                const TilingParams& params);

// Splits after '.', '!' or '?' when followed by whitespace. Sentences are
// trimmed; empty ones are dropped.
std::vector<std::string> split_sentences(std::string_view text);

// Paragraph texts (sentences joined by a single space). Throws
// InvalidArgument on blank text.
std::vector<std::string> segment_article(std::string_view text, const LdaModel& model,
                                         const TilingParams& params);

// ---------------------------------------------------------------------------
// Curation

struct CurationRules {
  std::vector<std::string> include_terms;    // every term must occur as a token
  std::vector<std::string> exclude_phrases;  // case-insensitive substring of raw text
};

struct RuleCount {
  std::string rule_id;  // "include:<term>" or "exclude:<phrase>"
  std::size_t rejected = 0;
};

struct CurationResult {
  std::vector<std::size_t> kept;  // indices into the input, ascending
  std::vector<RuleCount> audit;   // one entry per rule, in rule order
  std::size_t total = 0;
};

// An article failing several rules is counted under each of them.
CurationResult curate(std::span<const std::string> texts, const CurationRules& rules);

}  // namespace polarmeter::topicmodel

#endif  // POLARMETER_TOPICMODEL_HPP_
