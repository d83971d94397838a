// Serial reference vs OpenMP kernels on a synthetic 100k x 300 space.
// Each parallel benchmark first checks that it reproduces the serial result.

#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "affexp/core_model.hpp"
#include "affexp/embedding_store.hpp"
#include "affexp/expansion.hpp"
#include "affexp/knn_kernels.hpp"
#include "affexp/lexical_kb.hpp"

using namespace affexp;

namespace {

struct Fixture {
  std::shared_ptr<const EmbeddingSpace> space;
  AffectiveModel model;
  std::unique_ptr<LexiconIndex> index;
  LexicalKB kb;
  std::vector<double> query;
  double query_norm = 0;
  std::vector<std::string> candidates;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    constexpr std::size_t n = 100000, dim = 300;
    std::mt19937_64 rng(1);
    std::normal_distribution<float> g;
    std::vector<std::string> terms;
    std::vector<float> data(n * dim);
    for (std::size_t i = 0; i < n; ++i) terms.push_back("t" + std::to_string(i));
    for (auto& x : data) x = g(rng);
    Fixture out;
    out.space = std::make_shared<const EmbeddingSpace>(std::move(terms), std::move(data), dim);

    std::vector<LexiconEntry> entries;
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t i = 0; i < n; i += 20) {
      LexiconEntry e;
      e.surface = out.space->term(i);
      for (const auto& c : hourglass_categories()) e.scores.set(c.name, std::round(u(rng) * 1e6) / 1e6);
      entries.push_back(std::move(e));
    }
    out.model = AffectiveModel(hourglass_categories(), std::move(entries));
    out.index = std::make_unique<LexiconIndex>(out.model, out.space);

    out.query = out.space->vector_of(7);
    out.query_norm = kernels::vector_norm(out.query);
    for (std::size_t i = 1; i < n; i += 997) out.candidates.push_back(out.space->term(i));
    return out;
  }();
  return f;
}

void BM_TopKSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        kernels::top_k_serial(*f.space, kernels::Query{f.query, f.query_norm}, {}, static_cast<std::size_t>(state.range(0)), -1.0, 7u));
  }
}

void BM_TopKParallel(benchmark::State& state) {
  const auto& f = fixture();
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto ref = kernels::top_k_serial(*f.space, kernels::Query{f.query, f.query_norm}, {}, k, -1.0, 7u);
  const auto got = kernels::top_k_parallel(*f.space, kernels::Query{f.query, f.query_norm}, {}, k, -1.0, 7u);
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (got.size() != ref.size() || got[i].row != ref[i].row) {
      state.SkipWithError("parallel top-k differs from the serial reference");
      return;
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::top_k_parallel(*f.space, kernels::Query{f.query, f.query_norm}, {}, k, -1.0, 7u));
  }
}

void BM_CandidatesSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_candidates_serial(*f.index, f.kb, f.candidates, {}));
  }
}

void BM_CandidatesParallel(benchmark::State& state) {
  const auto& f = fixture();
  const auto ref = score_candidates_serial(*f.index, f.kb, f.candidates, {});
  const auto got = score_candidates_parallel(*f.index, f.kb, f.candidates, {});
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (!(got[i].result.scores == ref[i].result.scores)) {
      state.SkipWithError("parallel candidate scores differ from the serial reference");
      return;
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(score_candidates_parallel(*f.index, f.kb, f.candidates, {}));
  }
}

}  // namespace

BENCHMARK(BM_TopKSerial)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TopKParallel)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CandidatesSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CandidatesParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
