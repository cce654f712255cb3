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

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "polarmeter/agreement.hpp"
#include "polarmeter/analytics.hpp"
#include "polarmeter/lexical.hpp"
#include "polarmeter/log.hpp"
#include "polarmeter/polarization.hpp"
#include "polarmeter/random.hpp"
#include "polarmeter/topicmodel.hpp"

namespace pm = polarmeter;

namespace {

pm::corpus::Corpus big_corpus(std::size_t articles) {
  pm::corpus::Corpus c;
  for (std::uint64_t seed = 1; c.articles.size() < articles; ++seed) {
    for (auto& a : pm::testing::random_corpus(seed, 30).articles) {
      a.article_id = "b" + std::to_string(c.articles.size());
      c.articles.push_back(std::move(a));
      if (c.articles.size() == articles) break;
    }
  }
  return c;
}

void BM_KrippendorffAlpha(benchmark::State& state) {
  const auto c = big_corpus(static_cast<std::size_t>(state.range(0)));
  const auto m = pm::agreement::build_reliability(c, pm::corpus::Dimension::kEconomic);
  for (auto _ : state) benchmark::DoNotOptimize(pm::agreement::krippendorff_alpha(m).alpha);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.units.size()));
}
BENCHMARK(BM_KrippendorffAlpha)->Arg(200)->Arg(2000);

void BM_Cooccurrence(benchmark::State& state) {
  const auto c = big_corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pm::analytics::cooccurrence(c, pm::analytics::Level::kParagraph).denominator);
  }
}
BENCHMARK(BM_Cooccurrence)->Arg(200)->Arg(2000);

void BM_BimodalityCoefficient(benchmark::State& state) {
  pm::Rng rng(1);
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (double& v : x) v = 2 * rng.uniform() - 1;
  for (auto _ : state) benchmark::DoNotOptimize(pm::polarization::bimodality_coefficient(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BimodalityCoefficient)->Arg(100)->Arg(100000);

void BM_PolarizationSeries(benchmark::State& state) {
  const auto c = big_corpus(2000);
  const auto bins = pm::polarization::corpus_bins(c, 4);
  pm::polarization::SeriesOptions opts;
  opts.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        pm::polarization::constraint_series(c, bins, pm::corpus::Dimension::kEconomic,
                                            pm::corpus::Dimension::kSocial, opts));
  }
}
BENCHMARK(BM_PolarizationSeries)->Arg(1)->Arg(4);

std::vector<pm::lexical::Document> random_documents(std::size_t n, std::size_t length,
                                                    std::size_t vocab) {
  pm::Rng rng(3);
  std::vector<pm::lexical::Document> docs(n);
  for (auto& d : docs) {
    for (std::size_t t = 0; t < length; ++t) d.push_back("w" + std::to_string(rng.below(vocab)));
  }
  return docs;
}

void BM_LdaFit(benchmark::State& state) {
  const auto docs = random_documents(200, 80, 500);
  pm::topicmodel::LdaParams p;
  p.topics = static_cast<std::size_t>(state.range(0));
  p.iterations = 20;
  for (auto _ : state) benchmark::DoNotOptimize(pm::topicmodel::lda_fit(docs, p).phi);
  state.SetItemsProcessed(state.iterations() * 200 * 80 * p.iterations);
}
BENCHMARK(BM_LdaFit)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_BinaryLogisticRegression(benchmark::State& state) {
  const auto docs = random_documents(1000, 30, 2000);
  const auto x = pm::lexical::featurize(docs, pm::lexical::build_vocab(docs, 2));
  std::vector<int> y;
  for (std::size_t i = 0; i < docs.size(); ++i) y.push_back(static_cast<int>(i % 2));
  pm::lexical::TrainParams p;
  p.epochs = 100;
  for (auto _ : state) benchmark::DoNotOptimize(pm::lexical::train_binary_lr(x, y, p).weights);
}
BENCHMARK(BM_BinaryLogisticRegression)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
