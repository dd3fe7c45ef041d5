#include <benchmark/benchmark.h>

#include <random>

#include "common.hpp"
#include "siltir/analyzer.hpp"

namespace {

void BM_Tokenize(benchmark::State& state) {
  const auto vocab = siltir::bench::synth_vocab(500);
  std::mt19937 rng(3);
  const std::string text =
      siltir::bench::synth_text(rng, vocab, static_cast<std::size_t>(state.range(0)));
  std::size_t tokens = 0;
  for (auto _ : state) {
    auto out = siltir::Analyzer::tokenize(text);
    tokens += out.size();
    benchmark::DoNotOptimize(out);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
  state.counters["tokens"] = static_cast<double>(tokens) /
                             static_cast<double>(state.iterations());
}
BENCHMARK(BM_Tokenize)->Arg(64)->Arg(512)->Arg(4096);

void BM_AnalyzeFullPipeline(benchmark::State& state) {
  const auto vocab = siltir::bench::synth_vocab(500);
  const siltir::Analyzer analyzer = siltir::bench::synth_analyzer(vocab);
  std::mt19937 rng(4);
  const std::string text =
      siltir::bench::synth_text(rng, vocab, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto out = analyzer.analyze(text, false);
    benchmark::DoNotOptimize(out);
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_AnalyzeFullPipeline)->Arg(64)->Arg(512)->Arg(4096);

void BM_AnalyzeQueryTime(benchmark::State& state) {
  const auto vocab = siltir::bench::synth_vocab(500);
  const siltir::Analyzer analyzer = siltir::bench::synth_analyzer(vocab);
  std::mt19937 rng(5);
  const std::string text = siltir::bench::synth_text(rng, vocab, 4);
  for (auto _ : state) {
    auto out = analyzer.analyze(text, true);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_AnalyzeQueryTime);

}  // namespace
