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

#ifndef POLARMETER_AGREEMENT_HPP_
#define POLARMETER_AGREEMENT_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "polarmeter/corpus.hpp"

namespace polarmeter::agreement {

// Values assigned to one unit by whichever annotators coded it. Values are
// category codes into ReliabilityMatrix::label_domain.
struct Unit {
  std::string article_id;
  std::size_t paragraph_index = 0;
  std::vector<int> values;
};

struct ReliabilityMatrix {
  std::vector<Unit> units;
  std::vector<std::string> label_domain;
};

struct AgreementResult {
  double alpha = 0.0;
  std::size_t pairable_values = 0;  // n: values in units with >= 2 values
  std::size_t pairable_units = 0;
  double observed_disagreement = 0.0;  // D_o
  double expected_disagreement = 0.0;  // D_e
  bool degenerate = false;             // D_e == 0, alpha defined as 1
};

// One unit per paragraph holding each annotator's label on `dimension`.
// Domain codes are the corpus::Label values. With include_irrelevant=false,
// `irrelevant` labels are dropped before pairing.
ReliabilityMatrix build_reliability(const corpus::Corpus& corpus, corpus::Dimension dimension,
                                    bool include_irrelevant = true);

// Krippendorff's alpha for nominal data via the coincidence matrix:
//   o_ck = sum_u (#ordered pairs (c,k) in u) / (m_u - 1)
//   D_o  = sum_{c!=k} o_ck / n
//   D_e  = sum_{c!=k} n_c n_k / (n (n - 1))
//   alpha = 1 - D_o / D_e
// Units with fewer than two values are ignored. Throws InvalidArgument when
// no unit is pairable. When D_e is zero every pairable value is identical;
// alpha is then 1 and a warning is logged.
AgreementResult krippendorff_alpha(const ReliabilityMatrix& matrix);

struct Disagreement {
  std::string article_id;
  std::size_t paragraph_index = 0;
  std::vector<corpus::Label> labels;  // sorted multiset
};

// Paragraphs where at least two annotators gave different labels on
// `dimension`, sorted by (article_id, paragraph_index).
std::vector<Disagreement> disagreements(const corpus::Corpus& corpus,
                                        corpus::Dimension dimension);

}  // namespace polarmeter::agreement

#endif  // POLARMETER_AGREEMENT_HPP_
