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
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "polarmeter/error.hpp"
#include "polarmeter/random.hpp"
#include "polarmeter/topicmodel.hpp"

namespace polarmeter::topicmodel {

std::optional<std::size_t> LdaModel::word_id(std::string_view term) const {
  auto it = std::lower_bound(vocabulary.begin(), vocabulary.end(), term);
  if (it == vocabulary.end() || *it != term) return std::nullopt;
  return static_cast<std::size_t>(it - vocabulary.begin());
}

namespace {

std::size_t sample(std::span<const double> weights, double total, Rng& rng) {
  double u = rng.uniform() * total;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    u -= weights[k];
    if (u < 0) return k;
  }
  return weights.size() - 1;  // rounding at the top end
}

void check_distribution(std::span<const double> weights, double total) {
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw Error("Gibbs conditional has a negative or NaN weight");
    sum += w / total;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw Error("Gibbs conditional does not sum to 1");
}

}  // namespace

LdaModel lda_fit(std::span<const Document> documents, const LdaParams& params) {
  if (documents.empty()) throw InvalidArgument("lda_fit: empty corpus");
  if (params.topics < 1) throw InvalidArgument("lda_fit: topics must be >= 1");
  if (params.iterations < 1) throw InvalidArgument("lda_fit: iterations must be >= 1");
  if (!(params.beta > 0)) throw InvalidArgument("lda_fit: beta must be > 0");
  for (std::size_t d = 0; d < documents.size(); ++d) {
    if (documents[d].empty()) {
      throw InvalidArgument("lda_fit: document " + std::to_string(d) + " has no tokens");
    }
  }

  LdaModel model;
  const std::size_t k_topics = params.topics;
  model.num_topics = k_topics;
  model.alpha = params.alpha.value_or(50.0 / static_cast<double>(k_topics));
  if (!(model.alpha > 0)) throw InvalidArgument("lda_fit: alpha must be > 0");
  model.beta = params.beta;
  model.iterations = params.iterations;
  model.seed = params.seed;

  for (const auto& doc : documents) {
    model.vocabulary.insert(model.vocabulary.end(), doc.begin(), doc.end());
  }
  std::sort(model.vocabulary.begin(), model.vocabulary.end());
  model.vocabulary.erase(std::unique(model.vocabulary.begin(), model.vocabulary.end()),
                         model.vocabulary.end());
  const std::size_t v_size = model.vocabulary.size();

  std::vector<std::vector<std::size_t>> words(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (const auto& token : documents[d]) words[d].push_back(*model.word_id(token));
  }

  const double alpha = model.alpha, beta = model.beta;
  const double v_beta = static_cast<double>(v_size) * beta;
  std::vector<std::vector<std::size_t>> doc_topic(documents.size(),
                                                  std::vector<std::size_t>(k_topics, 0));
  std::vector<std::vector<std::size_t>> topic_word(k_topics, std::vector<std::size_t>(v_size, 0));
  std::vector<std::size_t> topic_total(k_topics, 0);
  auto& z = model.assignments;
  z.resize(documents.size());

  Rng rng(params.seed);
  for (std::size_t d = 0; d < documents.size(); ++d) {
    for (std::size_t w : words[d]) {
      const auto k = rng.below(k_topics);
      z[d].push_back(static_cast<int>(k));
      ++doc_topic[d][k];
      ++topic_word[k][w];
      ++topic_total[k];
    }
  }

  std::vector<double> weights(k_topics);
  for (int it = 0; it < params.iterations; ++it) {
    for (std::size_t d = 0; d < documents.size(); ++d) {
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const std::size_t w = words[d][i];
        auto k = static_cast<std::size_t>(z[d][i]);
        --doc_topic[d][k];
        --topic_word[k][w];
        --topic_total[k];
        double total = 0.0;
        for (std::size_t t = 0; t < k_topics; ++t) {
          weights[t] = (static_cast<double>(doc_topic[d][t]) + alpha) *
                       (static_cast<double>(topic_word[t][w]) + beta) /
                       (static_cast<double>(topic_total[t]) + v_beta);
          total += weights[t];
        }
        if (params.check_conditionals) check_distribution(weights, total);
        k = sample(weights, total, rng);
        z[d][i] = static_cast<int>(k);
        ++doc_topic[d][k];
        ++topic_word[k][w];
        ++topic_total[k];
      }
    }
  }

  model.phi.assign(k_topics, std::vector<double>(v_size));
  for (std::size_t k = 0; k < k_topics; ++k) {
    const double denom = static_cast<double>(topic_total[k]) + v_beta;
    for (std::size_t w = 0; w < v_size; ++w) {
      model.phi[k][w] = (static_cast<double>(topic_word[k][w]) + beta) / denom;
    }
  }
  model.theta.assign(documents.size(), std::vector<double>(k_topics));
  const double k_alpha = static_cast<double>(k_topics) * alpha;
  for (std::size_t d = 0; d < documents.size(); ++d) {
    const double denom = static_cast<double>(words[d].size()) + k_alpha;
    for (std::size_t k = 0; k < k_topics; ++k) {
      model.theta[d][k] = (static_cast<double>(doc_topic[d][k]) + alpha) / denom;
    }
  }
  return model;
}

std::vector<std::pair<std::string, double>> top_words(const LdaModel& model, std::size_t topic,
                                                      std::size_t k) {
  if (topic >= model.num_topics) throw InvalidArgument("top_words: topic out of range");
  const auto& row = model.phi[topic];
  std::vector<std::size_t> idx(row.size());
  std::iota(idx.begin(), idx.end(), 0);
  k = std::min(k, idx.size());
  // Vocabulary is sorted, so the index breaks ties by term.
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return row[a] != row[b] ? row[a] > row[b] : a < b;
                    });
  std::vector<std::pair<std::string, double>> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace_back(model.vocabulary[idx[i]], row[idx[i]]);
  return out;
}

void save_model(std::ostream& out, const LdaModel& model) {
  nlohmann::ordered_json j;
  j["format"] = "polarmeter-lda";
  j["num_topics"] = model.num_topics;
  j["alpha"] = model.alpha;
  j["beta"] = model.beta;
  j["iterations"] = model.iterations;
  j["seed"] = model.seed;
  j["vocabulary"] = model.vocabulary;
  j["phi"] = model.phi;
  j["theta"] = model.theta;
  out << j.dump() << '\n';
}

LdaModel load_model(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("model file: ") + e.what());
  }
  LdaModel m;
  try {
    m.num_topics = j.at("num_topics").get<std::size_t>();
    m.alpha = j.at("alpha").get<double>();
    m.beta = j.at("beta").get<double>();
    m.iterations = j.value("iterations", 0);
    m.seed = j.value("seed", std::uint64_t{0});
    m.vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
    m.phi = j.at("phi").get<std::vector<std::vector<double>>>();
    m.theta = j.value("theta", std::vector<std::vector<double>>{});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("model file: ") + e.what());
  }
  if (!std::is_sorted(m.vocabulary.begin(), m.vocabulary.end())) {
    throw ParseError(0, "model file: vocabulary must be sorted");
  }
  if (m.phi.size() != m.num_topics) throw ParseError(0, "model file: phi has wrong row count");
  for (const auto& row : m.phi) {
    if (row.size() != m.vocabulary.size()) {
      throw ParseError(0, "model file: phi row length differs from vocabulary size");
    }
  }
  return m;
}

}  // namespace polarmeter::topicmodel
