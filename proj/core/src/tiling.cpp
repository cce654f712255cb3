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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "polarmeter/error.hpp"
#include "polarmeter/random.hpp"
#include "polarmeter/topicmodel.hpp"

namespace polarmeter::topicmodel {
namespace {

// Depths this small come from rounding in the cosine, not from topic shifts.
constexpr double kDepthTolerance = 1e-9;

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    ab += a[k] * b[k];
    aa += a[k] * a[k];
    bb += b[k] * b[k];
  }
  // A block without any in-vocabulary token carries no evidence of a shift.
  if (aa == 0.0 || bb == 0.0) return 1.0;
  return std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0);
}

std::vector<double> block_sum(std::span<const std::vector<double>> rows, std::size_t begin,
                              std::size_t end) {
  std::vector<double> sum(rows.front().size(), 0.0);
  for (std::size_t i = begin; i < end; ++i) {
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += rows[i][k];
  }
  return sum;
}

}  // namespace

std::vector<std::vector<int>> infer_token_topics(const LdaModel& model,
                                                 std::span<const Document> sentences,
                                                 const TilingParams& params) {
  if (params.inference_iterations < 1) {
    throw InvalidArgument("inference iterations must be >= 1");
  }
  const std::size_t k_topics = model.num_topics;
  const int modal = std::clamp(params.modal_window, 1, params.inference_iterations);

  struct Token {
    std::size_t sentence, position, word;
  };
  std::vector<Token> tokens;
  std::vector<std::vector<int>> out(sentences.size());
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    out[s].assign(sentences[s].size(), -1);
    for (std::size_t i = 0; i < sentences[s].size(); ++i) {
      if (auto w = model.word_id(sentences[s][i])) tokens.push_back({s, i, *w});
    }
  }
  if (tokens.empty() || k_topics == 0) return out;

  Rng rng(params.seed);
  std::vector<std::size_t> z(tokens.size());
  std::vector<std::size_t> topic_count(k_topics, 0);
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    z[t] = rng.below(k_topics);
    ++topic_count[z[t]];
  }
  std::vector<std::vector<int>> tally(tokens.size(), std::vector<int>(k_topics, 0));
  std::vector<double> weights(k_topics);
  for (int it = 0; it < params.inference_iterations; ++it) {
    for (std::size_t t = 0; t < tokens.size(); ++t) {
      --topic_count[z[t]];
      double total = 0.0;
      for (std::size_t k = 0; k < k_topics; ++k) {
        weights[k] = (static_cast<double>(topic_count[k]) + model.alpha) *
                     model.phi[k][tokens[t].word];
        total += weights[k];
      }
      double u = rng.uniform() * total;
      std::size_t pick = k_topics - 1;
      for (std::size_t k = 0; k < k_topics; ++k) {
        u -= weights[k];
        if (u < 0) {
          pick = k;
          break;
        }
      }
      z[t] = pick;
      ++topic_count[pick];
    }
    if (it >= params.inference_iterations - modal) {
      for (std::size_t t = 0; t < tokens.size(); ++t) ++tally[t][z[t]];
    }
  }
  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const auto best = std::max_element(tally[t].begin(), tally[t].end()) - tally[t].begin();
    out[tokens[t].sentence][tokens[t].position] = static_cast<int>(best);
  }
  return out;
}

SegmentBoundarySet tile_topic_counts(std::span<const std::vector<double>> sentence_topics,
                                     std::size_t window, double threshold_multiplier,
                                     std::size_t max_segments) {
  if (window < 1) throw InvalidArgument("tiling window must be >= 1");
  SegmentBoundarySet out;
  const std::size_t n = sentence_topics.size();
  if (n < 2) return out;
  const std::size_t gaps = n - 1;

  for (std::size_t g = 0; g < gaps; ++g) {
    const std::size_t left_begin = g + 1 >= window ? g + 1 - window : 0;
    const std::size_t right_end = std::min(n, g + 1 + window);
    out.similarities.push_back(cosine(block_sum(sentence_topics, left_begin, g + 1),
                                      block_sum(sentence_topics, g + 1, right_end)));
  }
  const auto& sim = out.similarities;
  for (std::size_t g = 0; g < gaps; ++g) {
    double left_peak = sim[g];
    for (std::size_t j = g; j-- > 0 && sim[j] >= left_peak;) left_peak = sim[j];
    double right_peak = sim[g];
    for (std::size_t j = g + 1; j < gaps && sim[j] >= right_peak; ++j) right_peak = sim[j];
    double depth = (left_peak - sim[g]) + (right_peak - sim[g]);
    if (depth < kDepthTolerance) depth = 0.0;
    out.depths.push_back(depth);
  }

  const double mean =
      std::accumulate(out.depths.begin(), out.depths.end(), 0.0) / static_cast<double>(gaps);
  double var = 0.0;
  for (double d : out.depths) var += (d - mean) * (d - mean);
  const double sd = std::sqrt(var / static_cast<double>(gaps));
  out.threshold = mean - threshold_multiplier * sd;

  for (std::size_t g = 0; g < gaps; ++g) {
    const bool local_min = (g == 0 || sim[g] <= sim[g - 1]) && (g + 1 == gaps || sim[g] <= sim[g + 1]);
    if (local_min && out.depths[g] > 0.0 && out.depths[g] > out.threshold) {
      out.boundaries.push_back(g);
    }
  }
  if (max_segments > 0 && out.boundaries.size() + 1 > max_segments) {
    auto& b = out.boundaries;
    std::stable_sort(b.begin(), b.end(), [&](std::size_t x, std::size_t y) {
      return out.depths[x] > out.depths[y];
    });
    b.resize(max_segments - 1);
    std::sort(b.begin(), b.end());
  }
  return out;
}

SegmentBoundarySet topic_tiling(std::span<const Document> sentences, const LdaModel& model,
                                const TilingParams& params) {
  if (params.window < 1) throw InvalidArgument("tiling window must be >= 1");
  if (sentences.size() < 2) return {};
  const auto topics = infer_token_topics(model, sentences, params);
  std::vector<std::vector<double>> counts(sentences.size(),
                                          std::vector<double>(model.num_topics, 0.0));
  for (std::size_t s = 0; s < topics.size(); ++s) {
    for (int k : topics[s]) {
      if (k >= 0) counts[s][static_cast<std::size_t>(k)] += 1.0;
    }
  }
  return tile_topic_counts(counts, params.window, params.threshold_multiplier,
                           params.max_segments);
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  auto flush = [&](std::size_t begin, std::size_t end) {
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    if (end > begin) out.emplace_back(text.substr(begin, end - begin));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    const char c = text[i];
    if ((c == '.' || c == '!' || c == '?') &&
        std::isspace(static_cast<unsigned char>(text[i + 1]))) {
      flush(start, i + 1);
      start = i + 1;
    }
  }
  flush(start, text.size());
  return out;
}

std::vector<std::string> segment_article(std::string_view text, const LdaModel& model,
                                         const TilingParams& params) {
  const auto sentences = split_sentences(text);
  if (sentences.empty()) throw InvalidArgument("segment_article: text is empty");
  if (sentences.size() == 1) return sentences;
  std::vector<Document> tokens;
  tokens.reserve(sentences.size());
  for (const auto& s : sentences) tokens.push_back(lexical::tokenize(s));
  const auto tiling = topic_tiling(tokens, model, params);

  std::vector<std::string> paragraphs;
  std::string current;
  std::size_t next_boundary = 0;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    if (!current.empty()) current.push_back(' ');
    current += sentences[s];
    if (next_boundary < tiling.boundaries.size() && tiling.boundaries[next_boundary] == s) {
      paragraphs.push_back(std::move(current));
      current.clear();
      ++next_boundary;
    }
  }
  if (!current.empty()) paragraphs.push_back(std::move(current));
  return paragraphs;
}

}  // namespace polarmeter::topicmodel
