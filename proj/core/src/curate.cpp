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
#include <set>

#include "polarmeter/topicmodel.hpp"

namespace polarmeter::topicmodel {
namespace {

std::string ascii_lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

}  // namespace

CurationResult curate(std::span<const std::string> texts, const CurationRules& rules) {
  CurationResult result;
  result.total = texts.size();
  std::vector<std::vector<std::string>> include_tokens;
  for (const auto& term : rules.include_terms) {
    result.audit.push_back({"include:" + term, 0});
    include_tokens.push_back(lexical::tokenize(term));
  }
  std::vector<std::string> phrases;
  for (const auto& phrase : rules.exclude_phrases) {
    result.audit.push_back({"exclude:" + phrase, 0});
    phrases.push_back(ascii_lower(phrase));
  }

  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto tokens = lexical::tokenize(texts[i]);
    const std::set<std::string> vocab(tokens.begin(), tokens.end());
    const std::string lowered = ascii_lower(texts[i]);
    bool keep = true;
    std::size_t rule = 0;
    for (const auto& required : include_tokens) {
      const bool present = std::all_of(required.begin(), required.end(),
                                       [&](const std::string& t) { return vocab.count(t) > 0; });
      if (!present) {
        keep = false;
        ++result.audit[rule].rejected;
      }
      ++rule;
    }
    for (const auto& phrase : phrases) {
      if (!phrase.empty() && lowered.find(phrase) != std::string::npos) {
        keep = false;
        ++result.audit[rule].rejected;
      }
      ++rule;
    }
    if (keep) result.kept.push_back(i);
  }
  return result;
}

}  // namespace polarmeter::topicmodel
