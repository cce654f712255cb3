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

#include "polarmeter/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "polarmeter/csv.hpp"
#include "polarmeter/error.hpp"

namespace polarmeter::polarization {

using corpus::Dimension;

OutletBias composite_bias(std::string outlet, std::vector<SiteRating> site_ratings) {
  double sum = 0.0;
  std::size_t present = 0;
  for (const auto& [site, rating] : site_ratings) {
    if (!rating) continue;
    if (!(*rating >= -1.0 && *rating <= 1.0)) {
      throw InvalidArgument("rating for " + outlet + " from " + site + " is outside [-1, 1]");
    }
    sum += *rating;
    ++present;
  }
  if (present == 0) throw InvalidArgument("outlet " + outlet + " has no bias ratings");
  return {std::move(outlet), std::move(site_ratings), sum / static_cast<double>(present)};
}

std::vector<OutletBias> read_bias_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::map<std::string, std::vector<SiteRating>> by_outlet;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> fields;
    try {
      fields = csv::split_record(line);
    } catch (const ParseError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!header_seen) {
      if (fields != std::vector<std::string>{"outlet", "site", "rating"}) {
        throw ParseError(line_no, "bias file header must be 'outlet,site,rating'");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) throw ParseError(line_no, "expected 3 fields");
    std::optional<double> rating;
    if (fields[2] != "NA") {
      std::size_t used = 0;
      try {
        rating = std::stod(fields[2], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != fields[2].size()) {
        throw ParseError(line_no, "invalid rating '" + fields[2] + "'");
      }
    }
    by_outlet[fields[0]].emplace_back(fields[1], rating);
  }
  if (!header_seen) throw ParseError(0, "bias file is empty");
  std::vector<OutletBias> out;
  for (auto& [outlet, ratings] : by_outlet) {
    out.push_back(composite_bias(outlet, std::move(ratings)));
  }
  return out;
}

std::string_view to_string(BiasGroup group) {
  switch (group) {
    case BiasGroup::kLiberal:
      return "liberal";
    case BiasGroup::kNeutral:
      return "neutral";
    case BiasGroup::kConservative:
      return "conservative";
  }
  return "unknown";
}

BiasGroup bias_group(double bias, double tau) {
  if (!(tau > 0)) throw InvalidArgument("bias group threshold must be > 0");
  if (bias > tau) return BiasGroup::kConservative;
  if (bias < -tau) return BiasGroup::kLiberal;
  return BiasGroup::kNeutral;
}

std::map<std::string, BiasGroup> group_outlets(std::span<const OutletBias> biases, double tau) {
  std::map<std::string, BiasGroup> groups;
  for (const auto& b : biases) groups[b.outlet] = bias_group(b.composite, tau);
  return groups;
}

ArticleIdeology article_ideology(const corpus::Article& article,
                                 const corpus::LabelSource& source) {
  ArticleIdeology out;
  out.article_id = article.article_id;
  out.outlet = article.outlet;
  out.year = article.year;
  long total = 0;
  std::size_t total_n = 0;
  std::array<long, 3> sums{};
  std::array<std::size_t, 3> counts{};
  for (const auto& p : article.paragraphs) {
    const auto labels = source.labels_of(p);
    if (!labels) continue;
    for (Dimension d : corpus::kDimensions) {
      const auto s = labels->score(d);
      if (!s) continue;
      total += *s;
      ++total_n;
      sums[corpus::index_of(d)] += *s;
      ++counts[corpus::index_of(d)];
    }
  }
  if (total_n > 0) out.overall = static_cast<double>(total) / static_cast<double>(total_n);
  for (std::size_t d = 0; d < 3; ++d) {
    if (counts[d] > 0) {
      out.per_dimension[d] = static_cast<double>(sums[d]) / static_cast<double>(counts[d]);
    }
  }
  return out;
}

std::vector<TimeBin> make_bins(int min_year, int max_year, int width, std::optional<int> anchor) {
  if (width < 1) throw InvalidArgument("bin width must be >= 1");
  if (min_year > max_year) throw InvalidArgument("empty year range");
  const int a = anchor.value_or(min_year);
  // First aligned start at or before min_year.
  int start = a;
  if (a > min_year) {
    start = a - ((a - min_year + width - 1) / width) * width;
  } else {
    start = a + ((min_year - a) / width) * width;
  }
  std::vector<TimeBin> bins;
  for (int s = start; s <= max_year; s += width) {
    bins.push_back({s, std::min(s + width - 1, max_year)});
  }
  return bins;
}

std::optional<std::size_t> find_bin(std::span<const TimeBin> bins, int year) {
  for (std::size_t i = 0; i < bins.size(); ++i) {
    if (bins[i].contains(year)) return i;
  }
  return std::nullopt;
}

std::string_view reason_code(Reason reason) {
  switch (reason) {
    case Reason::kOk:
      return "ok";
    case Reason::kNoArticles:
      return "no_articles";
    case Reason::kBiasNearZero:
      return "bias_near_zero";
    case Reason::kTooFewPairs:
      return "too_few_pairs";
    case Reason::kTooFewSamples:
      return "too_few_samples";
    case Reason::kZeroVariance:
      return "zero_variance";
    case Reason::kNoDefinedValues:
      return "no_defined_values";
  }
  return "unknown";
}

MeasureValue sorting_measure(std::span<const double> ideologies, double bias, double epsilon) {
  if (ideologies.empty()) return {std::nullopt, std::nullopt, Reason::kNoArticles};
  if (std::abs(bias) < epsilon) return {std::nullopt, std::nullopt, Reason::kBiasNearZero};
  double sum = 0.0;
  for (double v : ideologies) sum += v;
  const double mean = sum / static_cast<double>(ideologies.size());
  const double deviation = (mean - bias) / std::abs(bias);
  return {std::abs(deviation), deviation, Reason::kOk};
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const auto [xmin, xmax] = std::minmax_element(x.begin(), x.end());
  const auto [ymin, ymax] = std::minmax_element(y.begin(), y.end());
  if (*xmin == *xmax || *ymin == *ymax) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

MeasureValue constraint_measure(std::span<const ArticleIdeology> articles, Dimension first,
                                Dimension second, std::size_t min_pairs) {
  std::vector<double> x, y;
  for (const auto& a : articles) {
    const auto u = a.on(first), v = a.on(second);
    if (u && v) {
      x.push_back(*u);
      y.push_back(*v);
    }
  }
  if (x.size() < std::max<std::size_t>(min_pairs, 2)) {
    return {std::nullopt, std::nullopt, Reason::kTooFewPairs};
  }
  const auto r = pearson(x, y);
  if (!r) return {std::nullopt, std::nullopt, Reason::kZeroVariance};
  return {r, std::nullopt, Reason::kOk};
}

double bimodality_coefficient(std::span<const double> samples, MomentMode mode) {
  const std::size_t count = samples.size();
  if (count < 4) throw InvalidArgument("bimodality coefficient needs at least 4 samples");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo == *hi) throw InvalidArgument("bimodality coefficient undefined for zero variance");
  const double n = static_cast<double>(count);
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : samples) {
    const double d = v - mean, d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  if (mode == MomentMode::kPopulation) return (skew * skew + 1.0) / kurt;

  const double g1 = std::sqrt(n * (n - 1.0)) / (n - 2.0) * skew;
  const double g2 = (n - 1.0) / ((n - 2.0) * (n - 3.0)) * ((n + 1.0) * (kurt - 3.0) + 6.0);
  const double correction = 3.0 * (n - 1.0) * (n - 1.0) / ((n - 2.0) * (n - 3.0));
  return (g1 * g1 + 1.0) / (g2 + correction);
}

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::kSorting:
      return "sorting";
    case Measure::kConstraint:
      return "constraint";
    case Measure::kDivergence:
      return "divergence";
  }
  return "unknown";
}

}  // namespace polarmeter::polarization
