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
#include <cstdio>
#include <numeric>

#include "polarmeter/error.hpp"
#include "polarmeter/lexical.hpp"
#include "polarmeter/log.hpp"

namespace polarmeter::lexical {
namespace {

// Mean data loss (no regularizer) and its gradient.
struct DataTerm {
  double loss = 0.0;
  std::vector<std::vector<double>> grad_w;
  std::vector<double> grad_b;
};

double softplus(double t) { return t > 0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double dot(const std::vector<double>& w, const SparseRow& row) {
  double z = 0.0;
  for (const auto& [col, count] : row) z += w[col] * count;
  return z;
}

DataTerm zero_term(const LinearModel& m) {
  DataTerm t;
  t.grad_w.assign(m.weights.size(), std::vector<double>(m.num_features(), 0.0));
  t.grad_b.assign(m.weights.size(), 0.0);
  return t;
}

void scale(DataTerm& t, double factor) {
  t.loss *= factor;
  for (auto& row : t.grad_w) {
    for (double& g : row) g *= factor;
  }
  for (double& g : t.grad_b) g *= factor;
}

DataTerm logistic_term(const DocTermMatrix& x, std::span<const int> y, const LinearModel& m) {
  DataTerm t = zero_term(m);
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    const double z = dot(m.weights[0], x.rows[i]) + m.intercepts[0];
    // Written so that flipping y and negating z mirror each other exactly.
    const bool positive = y[i] == 1;
    t.loss += positive ? softplus(-z) : softplus(z);
    const double g = positive ? -sigmoid(-z) : sigmoid(z);
    for (const auto& [col, count] : x.rows[i]) t.grad_w[0][col] += g * count;
    t.grad_b[0] += g;
  }
  scale(t, 1.0 / static_cast<double>(x.rows.size()));
  return t;
}

void log_softmax(const LinearModel& m, const SparseRow& row, std::vector<double>& out) {
  const std::size_t c = m.weights.size();
  double hi = -INFINITY;
  for (std::size_t k = 0; k < c; ++k) {
    out[k] = dot(m.weights[k], row) + m.intercepts[k];
    hi = std::max(hi, out[k]);
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < c; ++k) sum += std::exp(out[k] - hi);
  const double lse = hi + std::log(sum);
  for (std::size_t k = 0; k < c; ++k) out[k] -= lse;
}

double class_weight(std::span<const double> weights, int label) {
  return weights.empty() ? 1.0 : weights[static_cast<std::size_t>(label)];
}

DataTerm focal_term(const DocTermMatrix& x, std::span<const int> y, const LinearModel& m,
                    double gamma, std::span<const double> class_weights) {
  DataTerm t = zero_term(m);
  const std::size_t c = m.weights.size();
  std::vector<double> logp(c);
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    log_softmax(m, x.rows[i], logp);
    const auto yi = static_cast<std::size_t>(y[i]);
    const double cw = class_weight(class_weights, y[i]);
    const double lp = logp[yi];
    const double p = std::exp(lp);
    const double q = -std::expm1(lp);  // 1 - p without cancellation
    const double modulator = std::pow(q, gamma);
    t.loss += cw * modulator * -lp;
    // d loss / d z_k = cw * (gamma q^(gamma-1) p ln p - q^gamma) * (delta_yk - p_k)
    double focus = 0.0;
    if (gamma != 0.0 && q > 0.0) focus = gamma * std::pow(q, gamma - 1.0) * p * lp;
    const double f = cw * (focus - modulator);
    for (std::size_t k = 0; k < c; ++k) {
      const double pk = std::exp(logp[k]);
      const double dz = f * ((k == yi ? 1.0 : 0.0) - pk);
      for (const auto& [col, count] : x.rows[i]) t.grad_w[k][col] += dz * count;
      t.grad_b[k] += dz;
    }
  }
  scale(t, 1.0 / static_cast<double>(x.rows.size()));
  return t;
}

DataTerm cross_entropy_term(const DocTermMatrix& x, std::span<const int> y, const LinearModel& m,
                            std::span<const double> class_weights) {
  DataTerm t = zero_term(m);
  const std::size_t c = m.weights.size();
  std::vector<double> logp(c);
  for (std::size_t i = 0; i < x.rows.size(); ++i) {
    log_softmax(m, x.rows[i], logp);
    const auto yi = static_cast<std::size_t>(y[i]);
    const double cw = class_weight(class_weights, y[i]);
    t.loss += -cw * logp[yi];
    for (std::size_t k = 0; k < c; ++k) {
      const double dz = cw * (std::exp(logp[k]) - (k == yi ? 1.0 : 0.0));
      for (const auto& [col, count] : x.rows[i]) t.grad_w[k][col] += dz * count;
      t.grad_b[k] += dz;
    }
  }
  scale(t, 1.0 / static_cast<double>(x.rows.size()));
  return t;
}

double squared_norm(const std::vector<std::vector<double>>& w) {
  double s = 0.0;
  for (const auto& row : w) {
    for (double v : row) s += v * v;
  }
  return s;
}

void check_inputs(const DocTermMatrix& x, std::span<const int> y, std::size_t num_classes,
                  const TrainParams& params) {
  if (x.rows.size() != y.size()) {
    throw InvalidArgument("training rows (" + std::to_string(x.rows.size()) +
                          ") do not match labels (" + std::to_string(y.size()) + ")");
  }
  if (y.empty()) throw InvalidArgument("training set is empty");
  std::vector<bool> seen(num_classes, false);
  for (int label : y) {
    if (label < 0 || static_cast<std::size_t>(label) >= num_classes) {
      throw InvalidArgument("label " + std::to_string(label) + " out of range");
    }
    seen[static_cast<std::size_t>(label)] = true;
  }
  if (std::count(seen.begin(), seen.end(), true) < 2) {
    throw InvalidArgument("training labels contain a single class");
  }
  for (const auto& row : x.rows) {
    for (const auto& entry : row) {
      if (entry.first >= x.terms.size()) throw InvalidArgument("feature index out of range");
    }
  }
  if (params.l2 < 0 || params.learning_rate <= 0 || params.epochs < 0) {
    throw InvalidArgument("invalid training hyperparameters");
  }
}

std::vector<std::string> class_names(std::size_t num_classes) {
  if (num_classes == 3) return {"liberal", "neutral", "conservative"};
  std::vector<std::string> names;
  for (std::size_t k = 0; k < num_classes; ++k) names.push_back("class" + std::to_string(k));
  return names;
}

LinearModel blank_model(const DocTermMatrix& x, std::size_t rows) {
  LinearModel m;
  m.terms = x.terms;
  m.weights.assign(rows, std::vector<double>(x.terms.size(), 0.0));
  m.intercepts.assign(rows, 0.0);
  return m;
}

// Proximal gradient descent: the L2 term is applied in closed form after
// each gradient step, which stays stable for arbitrarily large l2.
template <typename DataFn>
void optimize(LinearModel& m, std::size_t n, const TrainParams& params, DataFn data) {
  const double reg = params.l2 / static_cast<double>(n);
  auto objective = [&](const LinearModel& model, const DataTerm& t) {
    return t.loss + 0.5 * reg * squared_norm(model.weights);
  };
  DataTerm current = data(m);
  double value = objective(m, current);
  m.objective_history.clear();
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    double step = params.learning_rate;
    for (;;) {
      LinearModel trial = m;
      const double shrink = 1.0 / (1.0 + step * reg);
      for (std::size_t k = 0; k < trial.weights.size(); ++k) {
        for (std::size_t j = 0; j < trial.weights[k].size(); ++j) {
          trial.weights[k][j] = (m.weights[k][j] - step * current.grad_w[k][j]) * shrink;
        }
        trial.intercepts[k] = m.intercepts[k] - step * current.grad_b[k];
      }
      DataTerm trial_term = data(trial);
      const double trial_value = objective(trial, trial_term);
      if (trial_value <= value) {
        m.weights = std::move(trial.weights);
        m.intercepts = std::move(trial.intercepts);
        current = std::move(trial_term);
        value = trial_value;
        break;
      }
      step *= 0.5;
      if (step < params.learning_rate * 1e-12) break;  // at a minimum to rounding
    }
    m.objective_history.push_back(value);
  }
}

}  // namespace

std::optional<double> LinearModel::weight_of(std::string_view term) const {
  if (!is_binary()) return std::nullopt;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    if (terms[j] == term) return weights[0][j];
  }
  return std::nullopt;
}

LinearModel train_binary_lr(const DocTermMatrix& x, std::span<const int> y,
                            const TrainParams& params) {
  check_inputs(x, y, 2, params);
  LinearModel m = blank_model(x, 1);
  m.classes = {"liberal", "conservative"};
  m.loss = LossKind::kLogistic;
  m.params = params;
  optimize(m, x.rows.size(), params,
           [&](const LinearModel& model) { return logistic_term(x, y, model); });
  return m;
}

Objective focal_objective(const DocTermMatrix& x, std::span<const int> y,
                          const LinearModel& model, double gamma,
                          std::span<const double> class_weights, double l2) {
  if (x.rows.empty() || x.rows.size() != y.size()) {
    throw InvalidArgument("focal_objective: rows and labels must be nonempty and aligned");
  }
  DataTerm t = focal_term(x, y, model, gamma, class_weights);
  const double reg = l2 / static_cast<double>(x.rows.size());
  Objective out;
  out.value = t.loss + 0.5 * reg * squared_norm(model.weights);
  for (std::size_t k = 0; k < t.grad_w.size(); ++k) {
    for (std::size_t j = 0; j < t.grad_w[k].size(); ++j) {
      t.grad_w[k][j] += reg * model.weights[k][j];
    }
  }
  out.grad_weights = std::move(t.grad_w);
  out.grad_intercepts = std::move(t.grad_b);
  return out;
}

double focal_loss(double p_true, double gamma) {
  if (!(p_true >= 0.0 && p_true <= 1.0)) {
    throw InvalidArgument("focal_loss: probability must lie in [0, 1]");
  }
  if (!(gamma >= 0.0)) throw InvalidArgument("focal_loss: gamma must be >= 0");
  if (p_true == 0.0) {
    log_warning("lexical", "focal_loss: p_true = 0 clamped to 1e-12");
    p_true = 1e-12;
  }
  return -std::pow(1.0 - p_true, gamma) * std::log(p_true);
}

std::vector<double> inverse_frequency_weights(std::span<const int> y, std::size_t num_classes) {
  std::vector<std::size_t> counts(num_classes, 0);
  for (int label : y) {
    if (label < 0 || static_cast<std::size_t>(label) >= num_classes) {
      throw InvalidArgument("label out of range");
    }
    ++counts[static_cast<std::size_t>(label)];
  }
  const auto present = static_cast<double>(
      std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
  std::vector<double> weights(num_classes, 0.0);
  for (std::size_t k = 0; k < num_classes; ++k) {
    if (counts[k] > 0) {
      weights[k] = static_cast<double>(y.size()) / (present * static_cast<double>(counts[k]));
    }
  }
  return weights;
}

LinearModel train_multinomial_focal(const DocTermMatrix& x, std::span<const int> y,
                                    std::size_t num_classes, const FocalParams& focal,
                                    const TrainParams& params) {
  check_inputs(x, y, num_classes, params);
  if (focal.gamma < 0) throw InvalidArgument("gamma must be >= 0");
  if (!focal.class_weights.empty() && focal.class_weights.size() != num_classes) {
    throw InvalidArgument("class weight count does not match class count");
  }
  LinearModel m = blank_model(x, num_classes);
  m.classes = class_names(num_classes);
  m.loss = LossKind::kFocal;
  m.gamma = focal.gamma;
  m.class_weights = focal.class_weights;
  m.params = params;
  optimize(m, x.rows.size(), params, [&](const LinearModel& model) {
    return focal_term(x, y, model, focal.gamma, focal.class_weights);
  });
  return m;
}

LinearModel train_multinomial_lr(const DocTermMatrix& x, std::span<const int> y,
                                 std::size_t num_classes, std::span<const double> class_weights,
                                 const TrainParams& params) {
  check_inputs(x, y, num_classes, params);
  if (!class_weights.empty() && class_weights.size() != num_classes) {
    throw InvalidArgument("class weight count does not match class count");
  }
  LinearModel m = blank_model(x, num_classes);
  m.classes = class_names(num_classes);
  m.loss = LossKind::kCrossEntropy;
  m.class_weights.assign(class_weights.begin(), class_weights.end());
  m.params = params;
  optimize(m, x.rows.size(), params, [&](const LinearModel& model) {
    return cross_entropy_term(x, y, model, class_weights);
  });
  return m;
}

int predict(const LinearModel& model, const SparseRow& row) {
  if (model.is_binary()) return dot(model.weights[0], row) + model.intercepts[0] > 0 ? 1 : 0;
  int best = 0;
  double best_score = -INFINITY;
  for (std::size_t k = 0; k < model.weights.size(); ++k) {
    const double s = dot(model.weights[k], row) + model.intercepts[k];
    if (s > best_score) {
      best_score = s;
      best = static_cast<int>(k);
    }
  }
  return best;
}

std::vector<int> predict(const LinearModel& model, const DocTermMatrix& x) {
  std::vector<int> out;
  out.reserve(x.rows.size());
  for (const auto& row : x.rows) out.push_back(predict(model, row));
  return out;
}

TopTerms top_terms(const LinearModel& model, std::size_t k) {
  if (!model.is_binary()) throw InvalidArgument("top_terms requires a binary model");
  const std::size_t v = model.num_features();
  if (k > v) {
    throw InvalidArgument("top_terms: k = " + std::to_string(k) + " exceeds vocabulary size " +
                          std::to_string(v));
  }
  const auto& w = model.weights[0];
  std::vector<std::size_t> order(v);
  std::iota(order.begin(), order.end(), 0);
  auto pick = [&](bool largest) {
    std::vector<std::size_t> idx = order;
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                        if (w[a] != w[b]) return largest ? w[a] > w[b] : w[a] < w[b];
                        return model.terms[a] < model.terms[b];
                      });
    std::vector<WeightedTerm> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back({model.terms[idx[i]], w[idx[i]]});
    return out;
  };
  return {pick(true), pick(false)};
}

std::string format_weight(double weight) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", weight);
  std::string s(buf);
  if (s == "-0.0") s = "0.0";
  return s;
}

}  // namespace polarmeter::lexical
