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

#ifndef POLARMETER_LEXICAL_HPP_
#define POLARMETER_LEXICAL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "polarmeter/corpus.hpp"

namespace polarmeter::lexical {

// Lowercases ASCII letters and splits on every run of characters that are not
// ASCII letters or digits. Bytes >= 0x80 are kept inside tokens so UTF-8
// words survive intact. Digit-only tokens are kept.
std::vector<std::string> tokenize(std::string_view text);

using Document = std::vector<std::string>;

struct Vocabulary {
  std::vector<std::string> terms;
  std::vector<std::size_t> document_frequency;
  std::unordered_map<std::string, std::size_t> index;

  std::size_t size() const { return terms.size(); }
  std::optional<std::size_t> find(std::string_view term) const;
};

// Terms with document frequency >= min_df, ordered by (df desc, term asc).
// Throws InvalidArgument if min_df is 0 or no term survives.
Vocabulary build_vocab(std::span<const Document> documents, std::size_t min_df);

enum class FeatureMode { kCounts, kBinary };

struct RowId {
  std::string article_id;
  std::size_t paragraph_index = 0;
};

// (column, count) pairs sorted by column; counts are positive.
using SparseRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct DocTermMatrix {
  std::vector<SparseRow> rows;
  std::vector<RowId> row_ids;        // may be empty for ad-hoc matrices
  std::vector<std::string> terms;    // column names, size == columns
};

// Out-of-vocabulary tokens are dropped.
DocTermMatrix featurize(std::span<const Document> documents, const Vocabulary& vocab,
                        FeatureMode mode = FeatureMode::kCounts);

// Paragraph documents for one dimension. Class ids follow corpus::Label
// (liberal 0, neutral 1, conservative 2); irrelevant and unlabeled paragraphs
// are skipped. With `articles`, only paragraphs of those articles are kept.
struct LabeledDocuments {
  std::vector<Document> documents;
  std::vector<corpus::Label> labels;
  std::vector<RowId> ids;
};

LabeledDocuments collect_paragraphs(const corpus::Corpus& corpus, corpus::Dimension dimension,
                                    const corpus::LabelSource& source,
                                    const std::set<std::string>* articles = nullptr);

enum class LossKind { kLogistic, kCrossEntropy, kFocal };

struct TrainParams {
  double l2 = 1.0;
  double learning_rate = 0.1;
  int epochs = 500;
  std::uint64_t seed = 7;
};

// Binary models have one weight row (positive weights favour classes[1]);
// multinomial models have one row per class.
struct LinearModel {
  std::vector<std::string> classes;
  std::vector<std::string> terms;
  std::vector<std::vector<double>> weights;
  std::vector<double> intercepts;

  LossKind loss = LossKind::kLogistic;
  double gamma = 0.0;
  std::vector<double> class_weights;
  TrainParams params;
  std::vector<double> objective_history;  // after each epoch

  bool is_binary() const { return weights.size() == 1; }
  std::size_t num_features() const { return terms.size(); }
  // Binary models only.
  std::optional<double> weight_of(std::string_view term) const;
};

// L2-regularized logistic regression, y in {0 (liberal), 1 (conservative)}.
// Minimizes mean log loss + l2 / (2N) * ||w||^2 with the intercept
// unpenalized, by full-batch proximal gradient descent from zero weights.
// A step that would raise the objective is halved until it does not, so the
// objective never increases. Throws InvalidArgument if y has one class or
// does not match X.
LinearModel train_binary_lr(const DocTermMatrix& x, std::span<const int> y,
                            const TrainParams& params = {});

// Objective and gradient of the softmax model under focal loss
//   mean_i( -cw[y_i] * (1 - p_i)^gamma * ln p_i ) + l2 / (2N) * ||W||^2
// where p_i is the predicted probability of the true class. Empty
// class_weights means unit weights.
struct Objective {
  double value = 0.0;
  std::vector<std::vector<double>> grad_weights;
  std::vector<double> grad_intercepts;
};

Objective focal_objective(const DocTermMatrix& x, std::span<const int> y,
                          const LinearModel& model, double gamma,
                          std::span<const double> class_weights, double l2);

// -(1 - p)^gamma * ln p. p = 0 is clamped to 1e-12 with a warning; p outside
// [0, 1] or negative gamma throws InvalidArgument.
double focal_loss(double p_true, double gamma);

// w_c = N / (C * n_c) over the C classes present in y; 0 for absent classes.
std::vector<double> inverse_frequency_weights(std::span<const int> y, std::size_t num_classes);

struct FocalParams {
  double gamma = 2.0;
  std::vector<double> class_weights;  // empty = unit weights
};

// Softmax linear model with focal loss (gamma = 0 gives weighted cross
// entropy). Same optimizer as train_binary_lr. Requires >= 2 classes in y.
LinearModel train_multinomial_focal(const DocTermMatrix& x, std::span<const int> y,
                                    std::size_t num_classes, const FocalParams& focal,
                                    const TrainParams& params = {});

// Plain (optionally class-weighted) multinomial logistic regression with its
// own cross-entropy gradient; the reference the focal trainer reduces to.
LinearModel train_multinomial_lr(const DocTermMatrix& x, std::span<const int> y,
                                 std::size_t num_classes,
                                 std::span<const double> class_weights = {},
                                 const TrainParams& params = {});

int predict(const LinearModel& model, const SparseRow& row);
std::vector<int> predict(const LinearModel& model, const DocTermMatrix& x);

struct WeightedTerm {
  std::string term;
  double weight = 0.0;
};

struct TopTerms {
  std::vector<WeightedTerm> conservative;  // largest weights first
  std::vector<WeightedTerm> liberal;       // smallest weights first
};

// k largest and k smallest weights of a binary model, ties by term. Throws
// InvalidArgument when k exceeds the vocabulary or the model is multinomial.
TopTerms top_terms(const LinearModel& model, std::size_t k);

// One decimal place, e.g. "5.0", "-4.3".
std::string format_weight(double weight);

struct SplitRatios {
  int train = 80;
  int dev = 10;
  int test = 10;
};

// Parses "80,10,10". Throws InvalidArgument unless three nonnegative integers
// summing to 100.
SplitRatios parse_split_ratios(std::string_view text);

struct ArticleSplit {
  std::vector<std::string> train;
  std::vector<std::string> dev;
  std::vector<std::string> test;
};

// Splits article ids so that every paragraph of an article lands in one
// split. Articles are shuffled within year buckets of `bucket_width` years
// and dev/test are drawn by systematic sampling over time order, so both are
// spread evenly across the covered period. Ids are sorted within each split.
ArticleSplit split_by_article(const corpus::Corpus& corpus, const SplitRatios& ratios,
                              std::uint64_t seed, int bucket_width = 4);

struct ClassMetrics {
  int label = 0;
  std::size_t support = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::vector<ClassMetrics> per_class;            // classes in y or predictions
  double macro_f1 = 0.0;
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
};

EvalReport evaluate_predictions(std::span<const int> truth, std::span<const int> predicted,
                                std::size_t num_classes);
EvalReport evaluate(const LinearModel& model, const DocTermMatrix& x, std::span<const int> y);

}  // namespace polarmeter::lexical

#endif  // POLARMETER_LEXICAL_HPP_
