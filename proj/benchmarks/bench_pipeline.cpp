#include <benchmark/benchmark.h>

#include "foresight/matrix.hpp"
#include "foresight/text.hpp"
#include "foresight/topics.hpp"
#include "support/support.hpp"

using namespace foresight;

static void BM_FitLda(benchmark::State& state) {
  const auto s = testkit::synthetic_two_topic(3, static_cast<std::size_t>(state.range(0)));
  auto cfg = topics::LdaConfig::with_topics(2);
  cfg.iterations = 200;
  cfg.burn_in = 50;
  for (auto _ : state) benchmark::DoNotOptimize(topics::fit_lda(s.corpus, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.corpus.n_tokens()) * 200);
}
BENCHMARK(BM_FitLda)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_BuildTfidf(benchmark::State& state) {
  const auto s = testkit::synthetic_two_topic(5, 1000);
  std::vector<text::Tokens> docs;
  for (const auto& d : s.corpus.docs) {
    text::Tokens t;
    for (auto w : d) t.push_back(s.corpus.terms[w]);
    docs.push_back(std::move(t));
  }
  for (auto _ : state) benchmark::DoNotOptimize(text::build_matrix(docs));
}
BENCHMARK(BM_BuildTfidf)->Unit(benchmark::kMillisecond);

static void BM_BuildImpactMatrix(benchmark::State& state) {
  const auto factors = matrix::builtin_factors();
  for (auto _ : state) benchmark::DoNotOptimize(matrix::build_matrix(factors));
}
BENCHMARK(BM_BuildImpactMatrix);
