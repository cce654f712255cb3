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

// Independent reference computations for the tests. Nothing here calls the
// library code it is used to check.

#ifndef POLARMETER_TESTS_SUPPORT_ORACLES_HPP_
#define POLARMETER_TESTS_SUPPORT_ORACLES_HPP_

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polarmeter/corpus.hpp"

namespace polarmeter::oracle {

// Krippendorff's alpha (nominal) by enumerating every ordered pair of values
// inside each unit and every ordered pair of pairable values overall.
struct AlphaParts {
  double alpha;
  double observed;
  double expected;
};

inline AlphaParts alpha_by_pairs(const std::vector<std::vector<int>>& units) {
  double observed_sum = 0.0;
  std::vector<int> pooled;
  for (const auto& u : units) {
    if (u.size() < 2) continue;
    const double m = static_cast<double>(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (i != j && u[i] != u[j]) observed_sum += 1.0 / (m - 1.0);
      }
    }
    pooled.insert(pooled.end(), u.begin(), u.end());
  }
  const double n = static_cast<double>(pooled.size());
  double expected_pairs = 0.0;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    for (std::size_t j = 0; j < pooled.size(); ++j) {
      if (i != j && pooled[i] != pooled[j]) expected_pairs += 1.0;
    }
  }
  const double d_o = observed_sum / n;
  const double d_e = expected_pairs / (n * (n - 1.0));
  return {d_e == 0.0 ? 1.0 : 1.0 - d_o / d_e, d_o, d_e};
}

// Adjudicated label as a string, "" when the paragraph has none.
inline std::string label_name(const corpus::Paragraph& p, int dim) {
  if (!p.adjudicated) return "";
  auto l = p.adjudicated->get(static_cast<corpus::Dimension>(dim));
  return l ? std::string(corpus::to_string(*l)) : "";
}

inline bool leans(const std::string& name) {
  return name == "liberal" || name == "neutral" || name == "conservative";
}

inline int lean_score(const std::string& name) {
  return name == "liberal" ? -1 : name == "neutral" ? 0 : 1;
}

struct OutletTally {
  std::size_t docs = 0;
  std::array<std::size_t, 3> dims{};
  std::array<std::array<std::size_t, 3>, 3> by_label{};  // [dim][L,N,C]
};

inline std::map<std::string, OutletTally> tally_outlets(const corpus::Corpus& c) {
  std::map<std::string, OutletTally> out;
  for (const auto& a : c.articles) {
    auto& t = out[a.outlet];
    t.docs += 1;
    for (const auto& p : a.paragraphs) {
      for (int d = 0; d < 3; ++d) {
        const auto name = label_name(p, d);
        if (!leans(name)) continue;
        t.dims[d] += 1;
        t.by_label[d][static_cast<std::size_t>(lean_score(name) + 1)] += 1;
      }
    }
  }
  return out;
}

// Co-occurrence counts by checking every (cell, cell) pair on every unit.
struct CoocOracle {
  std::array<std::array<std::size_t, 9>, 9> counts{};
  std::size_t denominator = 0;
};

inline bool paragraph_has(const corpus::Paragraph& p, int cell) {
  static const char* kNames[] = {"liberal", "neutral", "conservative"};
  return label_name(p, cell / 3) == kNames[cell % 3];
}

inline CoocOracle cooccurrence_paragraphs(const corpus::Corpus& c, bool labeled_only) {
  CoocOracle o;
  for (const auto& a : c.articles) {
    for (const auto& p : a.paragraphs) {
      if (!p.adjudicated) continue;
      bool any = false;
      for (int d = 0; d < 3; ++d) any = any || leans(label_name(p, d));
      if (!labeled_only || any) o.denominator += 1;
      for (int x = 0; x < 9; ++x) {
        for (int y = 0; y < 9; ++y) {
          if (paragraph_has(p, x) && paragraph_has(p, y)) o.counts[x][y] += 1;
        }
      }
    }
  }
  return o;
}

inline CoocOracle cooccurrence_articles(const corpus::Corpus& c) {
  CoocOracle o;
  for (const auto& a : c.articles) {
    o.denominator += 1;
    for (int x = 0; x < 9; ++x) {
      for (int y = 0; y < 9; ++y) {
        bool has_x = false, has_y = false;
        for (const auto& p : a.paragraphs) {
          has_x = has_x || paragraph_has(p, x);
          has_y = has_y || paragraph_has(p, y);
        }
        if (has_x && has_y) o.counts[x][y] += 1;
      }
    }
  }
  return o;
}

struct DivergenceOracle {
  std::size_t divergent = 0;
  double pct = 0.0;
  std::array<double, 3> shares{};  // liberal, neutral, conservative (percent)
};

// Checks every pair of labels inside each article.
inline DivergenceOracle divergence(const corpus::Corpus& c, bool strict) {
  DivergenceOracle o;
  std::array<double, 3> sums{};
  for (const auto& a : c.articles) {
    std::vector<int> scores;
    for (const auto& p : a.paragraphs) {
      for (int d = 0; d < 3; ++d) {
        const auto name = label_name(p, d);
        if (leans(name)) scores.push_back(lean_score(name));
      }
    }
    bool divergent = false;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      for (std::size_t j = i + 1; j < scores.size(); ++j) {
        if (strict ? scores[i] * scores[j] == -1 : scores[i] != scores[j]) divergent = true;
      }
    }
    if (!divergent) continue;
    o.divergent += 1;
    for (int s = -1; s <= 1; ++s) {
      const auto k = std::count(scores.begin(), scores.end(), s);
      sums[static_cast<std::size_t>(s + 1)] +=
          static_cast<double>(k) / static_cast<double>(scores.size());
    }
  }
  o.pct = c.articles.empty() ? 0.0
                             : 100.0 * static_cast<double>(o.divergent) /
                                   static_cast<double>(c.articles.size());
  if (o.divergent) {
    for (int k = 0; k < 3; ++k) o.shares[k] = 100.0 * sums[k] / static_cast<double>(o.divergent);
  }
  return o;
}

// Bias-corrected skewness and excess kurtosis from k-statistics on raw power
// sums, then BC = (G1^2 + 1) / (G2 + 3 (n-1)^2 / ((n-2)(n-3))).
inline double bimodality_by_kstatistics(const std::vector<double>& x) {
  const long double n = static_cast<long double>(x.size());
  long double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  for (double v : x) {
    const long double t = v;
    s1 += t;
    s2 += t * t;
    s3 += t * t * t;
    s4 += t * t * t * t;
  }
  const long double k2 = (n * s2 - s1 * s1) / (n * (n - 1));
  const long double k3 =
      (2 * s1 * s1 * s1 - 3 * n * s1 * s2 + n * n * s3) / (n * (n - 1) * (n - 2));
  const long double k4 = (-6 * s1 * s1 * s1 * s1 + 12 * n * s1 * s1 * s2 - 3 * n * (n - 1) * s2 * s2 -
                          4 * n * (n + 1) * s1 * s3 + n * n * (n + 1) * s4) /
                         (n * (n - 1) * (n - 2) * (n - 3));
  const long double g1 = k3 / std::pow(k2, 1.5L);
  const long double g2 = k4 / (k2 * k2);
  const long double corr = 3 * (n - 1) * (n - 1) / ((n - 2) * (n - 3));
  return static_cast<double>((g1 * g1 + 1) / (g2 + corr));
}

// Dense Newton solve of mean log loss + l2 / (2N) ||w||^2 (intercept free).
// rows are dense feature vectors.
inline std::vector<double> logistic_newton(const std::vector<std::vector<double>>& rows,
                                           const std::vector<int>& y, double l2,
                                           int iterations = 50) {
  const std::size_t n = rows.size(), v = rows.front().size(), p = v + 1;
  std::vector<double> beta(p, 0.0);  // last entry is the intercept
  for (int it = 0; it < iterations; ++it) {
    std::vector<double> g(p, 0.0);
    std::vector<std::vector<double>> h(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x = rows[i];
      x.push_back(1.0);
      double z = 0;
      for (std::size_t j = 0; j < p; ++j) z += beta[j] * x[j];
      const double mu = 1.0 / (1.0 + std::exp(-z));
      for (std::size_t j = 0; j < p; ++j) {
        g[j] += (mu - y[i]) * x[j] / n;
        for (std::size_t k = 0; k < p; ++k) h[j][k] += mu * (1 - mu) * x[j] * x[k] / n;
      }
    }
    for (std::size_t j = 0; j < v; ++j) {
      g[j] += l2 / n * beta[j];
      h[j][j] += l2 / n;
    }
    // Solve h * step = g by Gauss-Jordan with partial pivoting.
    for (std::size_t col = 0; col < p; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < p; ++r) {
        if (std::abs(h[r][col]) > std::abs(h[pivot][col])) pivot = r;
      }
      std::swap(h[col], h[pivot]);
      std::swap(g[col], g[pivot]);
      for (std::size_t r = 0; r < p; ++r) {
        if (r == col) continue;
        const double f = h[r][col] / h[col][col];
        for (std::size_t k = col; k < p; ++k) h[r][k] -= f * h[col][k];
        g[r] -= f * g[col];
      }
    }
    for (std::size_t j = 0; j < p; ++j) beta[j] -= g[j] / h[j][j];
  }
  return beta;
}

inline std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> out;
  std::string w;
  for (char ch : text) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      w += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    } else if (!w.empty()) {
      out.push_back(w);
      w.clear();
    }
  }
  if (!w.empty()) out.push_back(w);
  return out;
}

inline bool contains_ci(const std::string& hay, const std::string& needle) {
  auto it = std::search(hay.begin(), hay.end(), needle.begin(), needle.end(), [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  });
  return it != hay.end();
}

}  // namespace polarmeter::oracle

#endif  // POLARMETER_TESTS_SUPPORT_ORACLES_HPP_
