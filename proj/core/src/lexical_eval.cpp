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

#include "polarmeter/error.hpp"
#include "polarmeter/lexical.hpp"

namespace polarmeter::lexical {

EvalReport evaluate_predictions(std::span<const int> truth, std::span<const int> predicted,
                                std::size_t num_classes) {
  if (truth.empty()) throw InvalidArgument("evaluate: no labels");
  if (truth.size() != predicted.size()) {
    throw InvalidArgument("evaluate: label and prediction counts differ");
  }
  EvalReport report;
  report.confusion.assign(num_classes, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || predicted[i] < 0 || static_cast<std::size_t>(truth[i]) >= num_classes ||
        static_cast<std::size_t>(predicted[i]) >= num_classes) {
      throw InvalidArgument("evaluate: class id out of range");
    }
    ++report.confusion[static_cast<std::size_t>(truth[i])][static_cast<std::size_t>(predicted[i])];
  }
  double f1_sum = 0.0;
  for (std::size_t k = 0; k < num_classes; ++k) {
    std::size_t tp = report.confusion[k][k], support = 0, predicted_k = 0;
    for (std::size_t j = 0; j < num_classes; ++j) {
      support += report.confusion[k][j];
      predicted_k += report.confusion[j][k];
    }
    if (support == 0 && predicted_k == 0) continue;
    ClassMetrics m;
    m.label = static_cast<int>(k);
    m.support = support;
    m.precision = predicted_k ? static_cast<double>(tp) / static_cast<double>(predicted_k) : 0.0;
    m.recall = support ? static_cast<double>(tp) / static_cast<double>(support) : 0.0;
    m.f1 = m.precision + m.recall > 0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    f1_sum += m.f1;
    report.per_class.push_back(m);
  }
  report.macro_f1 = f1_sum / static_cast<double>(report.per_class.size());
  return report;
}

EvalReport evaluate(const LinearModel& model, const DocTermMatrix& x, std::span<const int> y) {
  if (x.terms.size() != model.terms.size()) {
    throw InvalidArgument("evaluate: model and matrix vocabularies differ");
  }
  const auto predicted = predict(model, x);
  const std::size_t classes = model.is_binary() ? 2 : model.weights.size();
  return evaluate_predictions(y, predicted, classes);
}

}  // namespace polarmeter::lexical
