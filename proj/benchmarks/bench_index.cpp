#include <benchmark/benchmark.h>

#include <filesystem>

#include "common.hpp"
#include "siltir/index.hpp"

namespace {

std::filesystem::path bench_dir(const char* name) {
  return std::filesystem::temp_directory_path() / "siltir-bench" / name;
}

void BM_IndexBuildCommit(benchmark::State& state) {
  const auto vocab = siltir::bench::synth_vocab(2000);
  const siltir::Analyzer analyzer = siltir::bench::synth_analyzer(vocab);
  const auto docs = siltir::bench::synth_corpus(
      static_cast<std::size_t>(state.range(0)), 120, vocab);
  const auto dir = bench_dir("build");
  std::uint64_t tokens = 0;
  for (auto _ : state) {
    std::filesystem::remove_all(dir);
    auto writer = siltir::IndexWriter::open(dir, analyzer);
    for (const auto& doc : docs) writer.add_document(doc);
    writer.commit();
    tokens = siltir::IndexReader::open(dir).stats().total_token_count;
  }
  std::filesystem::remove_all(dir);
  state.counters["indexed_tokens"] = static_cast<double>(tokens);
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          state.range(0));
}
BENCHMARK(BM_IndexBuildCommit)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PostingsDecode(benchmark::State& state) {
  const auto vocab = siltir::bench::synth_vocab(200);
  const siltir::Analyzer analyzer = siltir::bench::synth_analyzer(vocab);
  const auto docs = siltir::bench::synth_corpus(2000, 60, vocab);
  const auto dir = bench_dir("decode");
  std::filesystem::remove_all(dir);
  {
    auto writer = siltir::IndexWriter::open(dir, analyzer);
    for (const auto& doc : docs) writer.add_document(doc);
    writer.commit();
  }
  const auto reader = siltir::IndexReader::open(dir);
  // Densest list in the vocabulary.
  std::string hot;
  std::size_t best = 0;
  for (const auto& term : reader.vocabulary()) {
    const auto df = reader.postings(term).document_frequency();
    if (df > best) {
      best = df;
      hot = term;
    }
  }
  for (auto _ : state) {
    auto list = reader.postings(hot);
    benchmark::DoNotOptimize(list);
  }
  std::filesystem::remove_all(dir);
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(best));
}
BENCHMARK(BM_PostingsDecode);

}  // namespace
