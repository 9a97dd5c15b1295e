#include <benchmark/benchmark.h>

#include <random>

#include "ocalearn/opni.hpp"
#include "ocalearn/opnil.hpp"
#include "ocalearn/randgen.hpp"
#include "ocalearn/rpni.hpp"
#include "ocalearn/teacher.hpp"

using namespace ocalearn;

namespace {

SampleSet sample_of(const Droca& m, std::size_t words, std::size_t max_len, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SampleSet s;
  for (std::size_t i = 0; i < words; ++i) {
    Word w(rng() % (max_len + 1));
    for (Letter& a : w) a = static_cast<Letter>(rng() % m.alphabet().size());
    if (s.positives().count(w) || s.negatives().count(w)) continue;
    s.add(w, m.accepts(w));
  }
  return s;
}

Droca target(std::size_t n, std::size_t k, std::uint64_t seed) {
  GenConfig config;
  config.n_states = n;
  config.alphabet_size = k;
  config.seed = seed;
  return random_droca(config);
}

void BM_Rpni(benchmark::State& state) {
  const Droca m = target(8, 2, 3);
  const SampleSet s = sample_of(m, static_cast<std::size_t>(state.range(0)), 12, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rpni(s, m.alphabet()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rpni)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_ProductSearchEqual(benchmark::State& state) {
  const Droca m = target(static_cast<std::size_t>(state.range(0)), 2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(product_search(m, m));
}
BENCHMARK(BM_ProductSearchEqual)->DenseRange(4, 16, 4);

void BM_ProductSearchDistinct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Droca a = target(n, 2, 5), b = target(n, 2, 6);
  for (auto _ : state) benchmark::DoNotOptimize(product_search(a, b));
}
BENCHMARK(BM_ProductSearchDistinct)->DenseRange(4, 16, 4);

void BM_LearnDroca(benchmark::State& state) {
  const Droca m = target(static_cast<std::size_t>(state.range(0)), 2, 12);
  for (auto _ : state) {
    Teacher t(m);
    benchmark::DoNotOptimize(learn_droca(t));
  }
}
BENCHMARK(BM_LearnDroca)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_LearnVoca(benchmark::State& state) {
  GenConfig config;
  config.n_states = static_cast<std::size_t>(state.range(0));
  config.alphabet_size = 3;
  config.seed = 11;
  const Voca m = random_voca(config);
  for (auto _ : state) {
    Teacher t(m);
    benchmark::DoNotOptimize(learn_voca(t));
  }
}
BENCHMARK(BM_LearnVoca)->DenseRange(4, 16, 4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
