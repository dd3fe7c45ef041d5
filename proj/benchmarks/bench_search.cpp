#include <benchmark/benchmark.h>

#include <filesystem>
#include <random>
#include <vector>

#include "common.hpp"
#include "siltir/search.hpp"

namespace {

struct SearchFixture {
  siltir::Analyzer analyzer;
  std::filesystem::path dir;
  std::vector<std::string> queries;

  SearchFixture(std::size_t docs, std::size_t vocab_size)
      : analyzer(siltir::bench::synth_analyzer(siltir::bench::synth_vocab(vocab_size))),
        dir(std::filesystem::temp_directory_path() / "siltir-bench" /
            ("search" + std::to_string(docs))) {
    const auto vocab = siltir::bench::synth_vocab(vocab_size);
    std::filesystem::remove_all(dir);
    auto writer = siltir::IndexWriter::open(dir, analyzer);
    for (const auto& doc : siltir::bench::synth_corpus(docs, 80, vocab)) {
      writer.add_document(doc);
    }
    writer.commit();
    std::mt19937 rng(11);
    for (int i = 0; i < 64; ++i) {
      queries.push_back(siltir::bench::synth_text(rng, vocab, 3));
    }
  }
  ~SearchFixture() { std::filesystem::remove_all(dir); }
};

void BM_SearchTop10(benchmark::State& state) {
  SearchFixture fixture(static_cast<std::size_t>(state.range(0)), 1500);
  const auto reader = siltir::IndexReader::open(fixture.dir);
  std::size_t qi = 0;
  for (auto _ : state) {
    const auto query =
        siltir::make_query(fixture.analyzer, fixture.queries[qi++ % 64]);
    auto result = siltir::search(reader, query, 10);
    benchmark::DoNotOptimize(result);
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SearchTop10)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_ScoreSingleDocument(benchmark::State& state) {
  SearchFixture fixture(2000, 800);
  const auto reader = siltir::IndexReader::open(fixture.dir);
  const auto query = siltir::make_query(fixture.analyzer, fixture.queries[0]);
  std::uint32_t ord = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        siltir::score_document(query, ord++ % reader.doc_count(), reader, {}));
  }
}
BENCHMARK(BM_ScoreSingleDocument);

}  // namespace
