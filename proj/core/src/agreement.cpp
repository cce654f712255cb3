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

#include "polarmeter/agreement.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "polarmeter/error.hpp"
#include "polarmeter/log.hpp"

namespace polarmeter::agreement {

using corpus::Corpus;
using corpus::Dimension;
using corpus::Label;

ReliabilityMatrix build_reliability(const Corpus& corpus, Dimension dimension,
                                    bool include_irrelevant) {
  ReliabilityMatrix matrix;
  for (Label l : corpus::kLabels) matrix.label_domain.emplace_back(corpus::to_string(l));
  for (const auto& article : corpus.articles) {
    for (const auto& p : article.paragraphs) {
      Unit unit{article.article_id, p.index, {}};
      for (const auto& ann : p.annotations) {
        const auto label = ann.labels.get(dimension);
        if (!label) continue;
        if (!include_irrelevant && *label == Label::kIrrelevant) continue;
        unit.values.push_back(static_cast<int>(corpus::index_of(*label)));
      }
      matrix.units.push_back(std::move(unit));
    }
  }
  return matrix;
}

AgreementResult krippendorff_alpha(const ReliabilityMatrix& matrix) {
  // Codes may be sparse or exceed the declared domain; index them densely.
  std::map<int, std::size_t> code_index;
  for (const auto& unit : matrix.units) {
    if (unit.values.size() < 2) continue;
    for (int v : unit.values) code_index.emplace(v, 0);
  }
  if (code_index.empty()) {
    throw InvalidArgument("krippendorff_alpha: no unit has two or more values");
  }
  std::size_t next = 0;
  for (auto& [code, idx] : code_index) idx = next++;
  const std::size_t c = code_index.size();

  std::vector<double> coincidence(c * c, 0.0);
  AgreementResult result;
  std::vector<std::size_t> counts(c);
  for (const auto& unit : matrix.units) {
    const std::size_t m = unit.values.size();
    if (m < 2) continue;
    ++result.pairable_units;
    result.pairable_values += m;
    std::fill(counts.begin(), counts.end(), 0);
    for (int v : unit.values) ++counts[code_index[v]];
    const double weight = 1.0 / static_cast<double>(m - 1);
    for (std::size_t a = 0; a < c; ++a) {
      if (counts[a] == 0) continue;
      for (std::size_t b = 0; b < c; ++b) {
        const double pairs = a == b ? static_cast<double>(counts[a] * (counts[a] - 1))
                                    : static_cast<double>(counts[a] * counts[b]);
        coincidence[a * c + b] += pairs * weight;
      }
    }
  }

  const double n = static_cast<double>(result.pairable_values);
  std::vector<double> marginals(c, 0.0);
  double off_diagonal = 0.0;
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      marginals[a] += coincidence[a * c + b];
      if (a != b) off_diagonal += coincidence[a * c + b];
    }
  }
  double expected_pairs = 0.0;
  for (std::size_t a = 0; a < c; ++a) {
    for (std::size_t b = 0; b < c; ++b) {
      if (a != b) expected_pairs += marginals[a] * marginals[b];
    }
  }
  result.observed_disagreement = off_diagonal / n;
  result.expected_disagreement = expected_pairs / (n * (n - 1.0));
  if (result.expected_disagreement == 0.0) {
    log_warning("agreement",
                "expected disagreement is zero (all pairable values identical); alpha = 1");
    result.alpha = 1.0;
    result.degenerate = true;
  } else {
    result.alpha = 1.0 - result.observed_disagreement / result.expected_disagreement;
  }
  return result;
}

std::vector<Disagreement> disagreements(const Corpus& corpus, Dimension dimension) {
  std::vector<Disagreement> out;
  for (const auto& article : corpus.articles) {
    for (const auto& p : article.paragraphs) {
      std::vector<Label> labels;
      for (const auto& ann : p.annotations) {
        if (auto l = ann.labels.get(dimension)) labels.push_back(*l);
      }
      if (labels.size() < 2) continue;
      std::sort(labels.begin(), labels.end());
      if (labels.front() == labels.back()) continue;
      out.push_back({article.article_id, p.index, std::move(labels)});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Disagreement& a, const Disagreement& b) {
    return std::tie(a.article_id, a.paragraph_index) < std::tie(b.article_id, b.paragraph_index);
  });
  return out;
}

}  // namespace polarmeter::agreement
