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

#ifndef POLARMETER_POLARIZATION_HPP_
#define POLARMETER_POLARIZATION_HPP_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polarmeter/corpus.hpp"

namespace polarmeter::polarization {

// ---------------------------------------------------------------------------
// Proclaimed outlet bias

using SiteRating = std::pair<std::string, std::optional<double>>;

struct OutletBias {
  std::string outlet;
  std::vector<SiteRating> site_ratings;  // nullopt = not rated by that site
  double composite = 0.0;                // mean of the present ratings
};

// Throws InvalidArgument if no rating is present or a rating is outside
// [-1, 1].
OutletBias composite_bias(std::string outlet, std::vector<SiteRating> site_ratings);

// Reads CSV with header `outlet,site,rating`, where rating may be `NA`.
// Returns one entry per outlet, sorted by outlet. Throws ParseError.
std::vector<OutletBias> read_bias_csv(std::istream& in);

enum class BiasGroup { kLiberal, kNeutral, kConservative };

std::string_view to_string(BiasGroup group);

// conservative iff bias > tau, liberal iff bias < -tau, neutral otherwise.
// Throws InvalidArgument unless tau > 0.
BiasGroup bias_group(double bias, double tau);

std::map<std::string, BiasGroup> group_outlets(std::span<const OutletBias> biases, double tau);

// ---------------------------------------------------------------------------
// Article ideology

struct ArticleIdeology {
  std::string article_id;
  std::string outlet;
  int year = 0;
  // Mean score over every non-irrelevant (paragraph, dimension) label.
  std::optional<double> overall;
  // Mean score over paragraphs with a non-irrelevant label on that dimension.
  std::array<std::optional<double>, 3> per_dimension{};

  std::optional<double> on(corpus::Dimension d) const { return per_dimension[corpus::index_of(d)]; }
};

ArticleIdeology article_ideology(const corpus::Article& article,
                                 const corpus::LabelSource& source);

// ---------------------------------------------------------------------------
// Time bins

struct TimeBin {
  int start_year = 0;
  int end_year = 0;  // inclusive

  bool contains(int year) const { return year >= start_year && year <= end_year; }
  friend bool operator==(const TimeBin&, const TimeBin&) = default;
};

// Consecutive bins of `width` years covering [min_year, max_year]. Bin
// starts are aligned to `anchor` (default min_year); the last bin is cut at
// max_year. Throws InvalidArgument on width < 1 or min_year > max_year.
std::vector<TimeBin> make_bins(int min_year, int max_year, int width,
                               std::optional<int> anchor = std::nullopt);

std::optional<std::size_t> find_bin(std::span<const TimeBin> bins, int year);

// ---------------------------------------------------------------------------
// Measures

// Why a point has no value. Codes are stable and machine readable.
enum class Reason {
  kOk,
  kNoArticles,
  kBiasNearZero,
  kTooFewPairs,
  kTooFewSamples,
  kZeroVariance,
  kNoDefinedValues,
};

std::string_view reason_code(Reason reason);

struct MeasureValue {
  std::optional<double> value;
  std::optional<double> signed_value;
  Reason reason = Reason::kOk;
};

// |mean(I) - B| / |B| with the signed (mean(I) - B) / |B| alongside.
// `ideologies` are the defined overall values of one outlet's articles in one
// bin. Absent when there are none or |B| < epsilon.
MeasureValue sorting_measure(std::span<const double> ideologies, double bias,
                             double epsilon = 1e-3);

// Pearson r. nullopt when the sizes differ, n < 2, or either side is
// constant.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

// Pearson r between per-dimension ideologies over articles defined on both
// dimensions. Absent with fewer than min_pairs pairs or zero variance.
MeasureValue constraint_measure(std::span<const ArticleIdeology> articles, corpus::Dimension first,
                                corpus::Dimension second, std::size_t min_pairs = 3);

enum class MomentMode { kSample, kPopulation };

// BC = (g1^2 + 1) / (g2 + 3 (n-1)^2 / ((n-2)(n-3))) with bias-corrected
// sample skewness g1 and excess kurtosis g2; in population mode
// BC = (b1^2 + 1) / b2 with plain moment ratios. Throws InvalidArgument when
// n < 4 or all samples are equal.
double bimodality_coefficient(std::span<const double> samples,
                              MomentMode mode = MomentMode::kSample);

inline constexpr double kUniformBimodalityThreshold = 5.0 / 9.0;

// ---------------------------------------------------------------------------
// Series

enum class Measure { kSorting, kConstraint, kDivergence };

std::string_view to_string(Measure measure);

struct SeriesPoint {
  TimeBin bin;
  std::size_t count = 0;  // articles (or outlets, for group series) used
  std::optional<double> value;
  std::optional<double> signed_value;  // sorting only
  std::optional<bool> bimodal;         // divergence only
  Reason reason = Reason::kOk;
};

struct PolarizationSeries {
  Measure measure = Measure::kSorting;
  std::string stratum;   // display name, e.g. "WSJ", "conservative:economic-social"
  std::string outlet;    // set for per-outlet series
  std::string qualifier; // dimension or dimension pair, may be empty
  std::vector<SeriesPoint> points;
};

struct SeriesOptions {
  corpus::LabelSource source = corpus::LabelSource::adjudicated();
  double bias_epsilon = 1e-3;
  std::size_t min_pairs = 3;
  double bc_threshold = kUniformBimodalityThreshold;
  MomentMode moments = MomentMode::kSample;
  int jobs = 1;
};

// Bins spanning the corpus years. Throws InvalidArgument on an empty corpus.
std::vector<TimeBin> corpus_bins(const corpus::Corpus& corpus, int width,
                                 std::optional<int> anchor = std::nullopt);

// One sorting series per outlet that has a bias rating; outlets without one
// are skipped with a warning.
std::vector<PolarizationSeries> sorting_series(const corpus::Corpus& corpus,
                                               std::span<const OutletBias> biases,
                                               std::span<const TimeBin> bins,
                                               const SeriesOptions& options = {});

// Sorting per bias group with articles pooled across the group's outlets and
// B taken as the mean composite of those outlets.
std::vector<PolarizationSeries> pooled_sorting_series(const corpus::Corpus& corpus,
                                                      std::span<const OutletBias> biases,
                                                      std::span<const TimeBin> bins, double tau,
                                                      const SeriesOptions& options = {});

// One issue-constraint series per outlet for the dimension pair.
std::vector<PolarizationSeries> constraint_series(const corpus::Corpus& corpus,
                                                  std::span<const TimeBin> bins,
                                                  corpus::Dimension first,
                                                  corpus::Dimension second,
                                                  const SeriesOptions& options = {});

// Bimodality of per-dimension article ideology pooled over all outlets.
PolarizationSeries divergence_series(const corpus::Corpus& corpus, corpus::Dimension dimension,
                                     std::span<const TimeBin> bins,
                                     const SeriesOptions& options = {});

// Unweighted mean per bin of the defined per-outlet values in each bias group
// (series with the same qualifier are averaged together). Outlets missing
// from `groups` are ignored. All inputs must share the same bins.
std::vector<PolarizationSeries> group_series(std::span<const PolarizationSeries> per_outlet,
                                             const std::map<std::string, BiasGroup>& groups);

}  // namespace polarmeter::polarization

#endif  // POLARMETER_POLARIZATION_HPP_
