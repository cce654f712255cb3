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
#include <charconv>
#include <cmath>
#include <map>

#include "polarmeter/error.hpp"
#include "polarmeter/lexical.hpp"
#include "polarmeter/random.hpp"

namespace polarmeter::lexical {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c >= 0x80) {
      current.push_back(ch);
    } else if (c >= 'A' && c <= 'Z') {
      current.push_back(static_cast<char>(c - 'A' + 'a'));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::optional<std::size_t> Vocabulary::find(std::string_view term) const {
  auto it = index.find(std::string(term));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

Vocabulary build_vocab(std::span<const Document> documents, std::size_t min_df) {
  if (min_df == 0) throw InvalidArgument("build_vocab: min_df must be >= 1");
  std::map<std::string, std::size_t> df;
  for (const auto& doc : documents) {
    std::vector<std::string> unique(doc.begin(), doc.end());
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (auto& term : unique) ++df[term];
  }
  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [term, count] : df) {
    if (count >= min_df) kept.emplace_back(term, count);
  }
  if (kept.empty()) {
    throw InvalidArgument("build_vocab: no term has document frequency >= " +
                          std::to_string(min_df) + "; lower min_df");
  }
  std::stable_sort(kept.begin(), kept.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  Vocabulary vocab;
  for (auto& [term, count] : kept) {
    vocab.index.emplace(term, vocab.terms.size());
    vocab.terms.push_back(term);
    vocab.document_frequency.push_back(count);
  }
  return vocab;
}

DocTermMatrix featurize(std::span<const Document> documents, const Vocabulary& vocab,
                        FeatureMode mode) {
  DocTermMatrix x;
  x.terms = vocab.terms;
  x.rows.reserve(documents.size());
  for (const auto& doc : documents) {
    std::map<std::uint32_t, std::uint32_t> counts;
    for (const auto& token : doc) {
      if (auto idx = vocab.find(token)) ++counts[static_cast<std::uint32_t>(*idx)];
    }
    SparseRow row(counts.begin(), counts.end());
    if (mode == FeatureMode::kBinary) {
      for (auto& entry : row) entry.second = 1;
    }
    x.rows.push_back(std::move(row));
  }
  return x;
}

LabeledDocuments collect_paragraphs(const corpus::Corpus& corpus, corpus::Dimension dimension,
                                    const corpus::LabelSource& source,
                                    const std::set<std::string>* articles) {
  LabeledDocuments out;
  for (const auto& article : corpus.articles) {
    if (articles && !articles->count(article.article_id)) continue;
    for (const auto& p : article.paragraphs) {
      const auto labels = source.labels_of(p);
      if (!labels) continue;
      const auto label = labels->get(dimension);
      if (!label || *label == corpus::Label::kIrrelevant) continue;
      out.documents.push_back(tokenize(p.text));
      out.labels.push_back(*label);
      out.ids.push_back({article.article_id, p.index});
    }
  }
  return out;
}

SplitRatios parse_split_ratios(std::string_view text) {
  int parts[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t end = i < 2 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos) {
      throw InvalidArgument("split ratios must look like 80,10,10");
    }
    const auto field = text.substr(pos, end - pos);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), parts[i]);
    if (ec != std::errc() || ptr != field.data() + field.size() || parts[i] < 0) {
      throw InvalidArgument("invalid split ratio '" + std::string(field) + "'");
    }
    pos = end + 1;
  }
  if (parts[0] + parts[1] + parts[2] != 100) {
    throw InvalidArgument("split ratios must sum to 100");
  }
  return {parts[0], parts[1], parts[2]};
}

namespace {

// Removes `count` items from `pool` at evenly spaced positions with a random
// phase, returning them.
std::vector<std::string> systematic_draw(std::vector<std::string>& pool, std::size_t count,
                                         Rng& rng) {
  std::vector<std::string> drawn;
  if (count == 0) return drawn;
  const double stride = static_cast<double>(pool.size()) / static_cast<double>(count);
  const double phase = rng.uniform();
  std::vector<bool> take(pool.size(), false);
  for (std::size_t i = 0; i < count; ++i) {
    auto pos = static_cast<std::size_t>(std::floor((static_cast<double>(i) + phase) * stride));
    take[std::min(pos, pool.size() - 1)] = true;
  }
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    (take[i] ? drawn : rest).push_back(std::move(pool[i]));
  }
  pool = std::move(rest);
  return drawn;
}

std::size_t share_of(std::size_t n, int ratio) {
  if (ratio == 0) return 0;
  const auto k = static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratio / 100.0));
  return std::max<std::size_t>(k, 1);
}

}  // namespace

ArticleSplit split_by_article(const corpus::Corpus& corpus, const SplitRatios& ratios,
                              std::uint64_t seed, int bucket_width) {
  if (ratios.train + ratios.dev + ratios.test != 100) {
    throw InvalidArgument("split ratios must sum to 100");
  }
  if (bucket_width < 1) throw InvalidArgument("split bucket width must be >= 1");
  const std::size_t n = corpus.articles.size();
  const std::size_t nonzero = (ratios.train > 0) + (ratios.dev > 0) + (ratios.test > 0);
  if (n < nonzero) {
    throw InvalidArgument("split_by_article: " + std::to_string(n) +
                          " articles cannot fill " + std::to_string(nonzero) + " splits");
  }
  const std::size_t n_test = share_of(n, ratios.test);
  const std::size_t n_dev = share_of(n, ratios.dev);
  if (n_test + n_dev > n || (ratios.train > 0 && n_test + n_dev == n)) {
    throw InvalidArgument("split_by_article: too few articles for the requested ratios");
  }

  int min_year = corpus.articles.empty() ? 0 : corpus.articles.front().year;
  for (const auto& a : corpus.articles) min_year = std::min(min_year, a.year);
  std::map<int, std::vector<std::string>> buckets;
  for (const auto& a : corpus.articles) {
    buckets[(a.year - min_year) / bucket_width].push_back(a.article_id);
  }
  Rng rng(seed);
  std::vector<std::string> ordered;
  for (auto& [bucket, ids] : buckets) {
    std::sort(ids.begin(), ids.end());
    rng.shuffle(ids);
    ordered.insert(ordered.end(), ids.begin(), ids.end());
  }

  ArticleSplit split;
  split.test = systematic_draw(ordered, n_test, rng);
  split.dev = systematic_draw(ordered, n_dev, rng);
  split.train = std::move(ordered);
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.dev.begin(), split.dev.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

}  // namespace polarmeter::lexical
