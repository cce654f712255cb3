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

#include "polarmeter/error.hpp"
#include "polarmeter/log.hpp"
#include "polarmeter/parallel.hpp"
#include "polarmeter/polarization.hpp"

namespace polarmeter::polarization {

using corpus::Corpus;
using corpus::Dimension;

namespace {

struct BinnedIdeology {
  ArticleIdeology ideology;
  std::optional<std::size_t> bin;
};

std::vector<BinnedIdeology> bin_articles(const Corpus& corpus, std::span<const TimeBin> bins,
                                         const corpus::LabelSource& source) {
  std::vector<BinnedIdeology> out;
  out.reserve(corpus.articles.size());
  for (const auto& article : corpus.articles) {
    out.push_back({article_ideology(article, source), find_bin(bins, article.year)});
  }
  return out;
}

std::vector<SeriesPoint> empty_points(std::span<const TimeBin> bins) {
  std::vector<SeriesPoint> points(bins.size());
  for (std::size_t i = 0; i < bins.size(); ++i) points[i].bin = bins[i];
  return points;
}

std::string pair_name(Dimension a, Dimension b) {
  return std::string(corpus::to_string(a)) + "-" + std::string(corpus::to_string(b));
}

// Sorting over articles whose outlet is in `outlets`, one point per bin.
std::vector<SeriesPoint> sorting_points(const std::vector<BinnedIdeology>& articles,
                                        const std::set<std::string>& outlets, double bias,
                                        std::span<const TimeBin> bins,
                                        const SeriesOptions& options) {
  auto points = empty_points(bins);
  parallel_for(bins.size(), options.jobs, [&](std::size_t b) {
    std::vector<double> values;
    for (const auto& a : articles) {
      if (a.bin == b && outlets.count(a.ideology.outlet) && a.ideology.overall) {
        values.push_back(*a.ideology.overall);
      }
    }
    const auto m = sorting_measure(values, bias, options.bias_epsilon);
    points[b].count = values.size();
    points[b].value = m.value;
    points[b].signed_value = m.signed_value;
    points[b].reason = m.reason;
  });
  return points;
}

}  // namespace

std::vector<TimeBin> corpus_bins(const Corpus& corpus, int width, std::optional<int> anchor) {
  if (corpus.articles.empty()) throw InvalidArgument("cannot bin an empty corpus");
  int lo = corpus.articles.front().year, hi = lo;
  for (const auto& a : corpus.articles) {
    lo = std::min(lo, a.year);
    hi = std::max(hi, a.year);
  }
  return make_bins(lo, hi, width, anchor);
}

std::vector<PolarizationSeries> sorting_series(const Corpus& corpus,
                                               std::span<const OutletBias> biases,
                                               std::span<const TimeBin> bins,
                                               const SeriesOptions& options) {
  const auto articles = bin_articles(corpus, bins, options.source);
  std::set<std::string> rated;
  for (const auto& b : biases) rated.insert(b.outlet);
  std::set<std::string> unrated;
  for (const auto& a : corpus.articles) {
    if (!rated.count(a.outlet)) unrated.insert(a.outlet);
  }
  for (const auto& outlet : unrated) {
    log_warning("polarization", "outlet '" + outlet + "' has no bias rating; skipped in sorting");
  }
  std::vector<PolarizationSeries> out;
  for (const auto& b : biases) {
    PolarizationSeries s;
    s.measure = Measure::kSorting;
    s.stratum = b.outlet;
    s.outlet = b.outlet;
    s.points = sorting_points(articles, {b.outlet}, b.composite, bins, options);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PolarizationSeries> pooled_sorting_series(const Corpus& corpus,
                                                      std::span<const OutletBias> biases,
                                                      std::span<const TimeBin> bins, double tau,
                                                      const SeriesOptions& options) {
  const auto articles = bin_articles(corpus, bins, options.source);
  std::vector<PolarizationSeries> out;
  for (BiasGroup g : {BiasGroup::kLiberal, BiasGroup::kNeutral, BiasGroup::kConservative}) {
    std::set<std::string> members;
    double bias_sum = 0.0;
    for (const auto& b : biases) {
      if (bias_group(b.composite, tau) != g) continue;
      members.insert(b.outlet);
      bias_sum += b.composite;
    }
    if (members.empty()) continue;
    PolarizationSeries s;
    s.measure = Measure::kSorting;
    s.stratum = std::string(to_string(g));
    s.points = sorting_points(articles, members, bias_sum / static_cast<double>(members.size()),
                              bins, options);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PolarizationSeries> constraint_series(const Corpus& corpus,
                                                  std::span<const TimeBin> bins, Dimension first,
                                                  Dimension second,
                                                  const SeriesOptions& options) {
  const auto articles = bin_articles(corpus, bins, options.source);
  std::set<std::string> outlets;
  for (const auto& a : corpus.articles) outlets.insert(a.outlet);
  std::vector<PolarizationSeries> out;
  for (const auto& outlet : outlets) {
    PolarizationSeries s;
    s.measure = Measure::kConstraint;
    s.outlet = outlet;
    s.qualifier = pair_name(first, second);
    s.stratum = outlet + ":" + s.qualifier;
    s.points = empty_points(bins);
    parallel_for(bins.size(), options.jobs, [&](std::size_t b) {
      std::vector<ArticleIdeology> in_bin;
      for (const auto& a : articles) {
        if (a.bin == b && a.ideology.outlet == outlet) in_bin.push_back(a.ideology);
      }
      const auto m = constraint_measure(in_bin, first, second, options.min_pairs);
      std::size_t pairs = 0;
      for (const auto& a : in_bin) pairs += a.on(first) && a.on(second);
      s.points[b].count = pairs;
      s.points[b].value = m.value;
      s.points[b].reason = m.reason;
    });
    out.push_back(std::move(s));
  }
  return out;
}

PolarizationSeries divergence_series(const Corpus& corpus, Dimension dimension,
                                     std::span<const TimeBin> bins, const SeriesOptions& options) {
  const auto articles = bin_articles(corpus, bins, options.source);
  PolarizationSeries s;
  s.measure = Measure::kDivergence;
  s.qualifier = std::string(corpus::to_string(dimension));
  s.stratum = s.qualifier;
  s.points = empty_points(bins);
  parallel_for(bins.size(), options.jobs, [&](std::size_t b) {
    std::vector<double> values;
    for (const auto& a : articles) {
      if (a.bin != b) continue;
      if (auto v = a.ideology.on(dimension)) values.push_back(*v);
    }
    SeriesPoint& p = s.points[b];
    p.count = values.size();
    if (values.size() < 4) {
      p.reason = Reason::kTooFewSamples;
      return;
    }
    if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
      p.reason = Reason::kZeroVariance;
      return;
    }
    p.value = bimodality_coefficient(values, options.moments);
    p.bimodal = *p.value > options.bc_threshold;
  });
  return s;
}

std::vector<PolarizationSeries> group_series(std::span<const PolarizationSeries> per_outlet,
                                             const std::map<std::string, BiasGroup>& groups) {
  std::vector<PolarizationSeries> out;
  if (per_outlet.empty()) return out;
  const std::size_t n_bins = per_outlet.front().points.size();
  for (const auto& s : per_outlet) {
    if (s.points.size() != n_bins) throw InvalidArgument("group_series: series bins differ");
  }
  std::vector<std::string> qualifiers;
  for (const auto& s : per_outlet) {
    if (std::find(qualifiers.begin(), qualifiers.end(), s.qualifier) == qualifiers.end()) {
      qualifiers.push_back(s.qualifier);
    }
  }
  for (const auto& qualifier : qualifiers) {
    for (BiasGroup g : {BiasGroup::kLiberal, BiasGroup::kNeutral, BiasGroup::kConservative}) {
      std::vector<const PolarizationSeries*> members;
      for (const auto& s : per_outlet) {
        auto it = groups.find(s.outlet);
        if (s.qualifier == qualifier && it != groups.end() && it->second == g) {
          members.push_back(&s);
        }
      }
      if (members.empty()) continue;
      PolarizationSeries gs;
      gs.measure = members.front()->measure;
      gs.qualifier = qualifier;
      gs.stratum = std::string(to_string(g)) + (qualifier.empty() ? "" : ":" + qualifier);
      for (std::size_t b = 0; b < n_bins; ++b) {
        SeriesPoint p;
        p.bin = members.front()->points[b].bin;
        double sum = 0.0, signed_sum = 0.0;
        bool all_signed = true;
        for (const auto* m : members) {
          const auto& mp = m->points[b];
          if (!mp.value) continue;
          ++p.count;
          sum += *mp.value;
          if (mp.signed_value) {
            signed_sum += *mp.signed_value;
          } else {
            all_signed = false;
          }
        }
        if (p.count == 0) {
          p.reason = Reason::kNoDefinedValues;
        } else {
          const double k = static_cast<double>(p.count);
          p.value = sum / k;
          if (all_signed && gs.measure == Measure::kSorting) p.signed_value = signed_sum / k;
        }
        gs.points.push_back(p);
      }
      out.push_back(std::move(gs));
    }
  }
  return out;
}

}  // namespace polarmeter::polarization
