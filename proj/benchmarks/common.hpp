#pragma once

// Synthetic Ethiopic corpora for the benchmarks, deterministic by seed.

#include <random>
#include <string>
#include <vector>

#include "siltir/analyzer.hpp"
#include "siltir/index.hpp"
#include "siltir/utf8.hpp"

namespace siltir::bench {

inline std::string synth_word(std::mt19937& rng) {
  static constexpr char32_t kRows[] = {0x1200, 0x1210, 0x1220, 0x1230, 0x1208,
                                       0x1218, 0x1228, 0x1260, 0x1290, 0x12A0,
                                       0x12C8, 0x12F0, 0x1308, 0x1320, 0x1340};
  std::uniform_int_distribution<int> len(2, 5);
  std::uniform_int_distribution<std::size_t> row(0, std::size(kRows) - 1);
  std::uniform_int_distribution<int> order(0, 6);
  std::string word;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) utf8::append(word, kRows[row(rng)] + order(rng));
  return word;
}

inline std::vector<std::string> synth_vocab(std::size_t size, unsigned seed = 99) {
  std::mt19937 rng(seed);
  std::vector<std::string> vocab;
  vocab.reserve(size);
  for (std::size_t i = 0; i < size; ++i) vocab.push_back(synth_word(rng));
  return vocab;
}

inline std::string synth_text(std::mt19937& rng,
                              const std::vector<std::string>& vocab,
                              std::size_t words) {
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::string text;
  for (std::size_t i = 0; i < words; ++i) {
    if (i > 0) text += (i % 9 == 0) ? "። " : " ";
    text += vocab[pick(rng)];
  }
  return text;
}

inline std::vector<Document> synth_corpus(std::size_t docs, std::size_t words_per_doc,
                                          const std::vector<std::string>& vocab,
                                          unsigned seed = 7) {
  std::mt19937 rng(seed);
  std::vector<Document> corpus;
  corpus.reserve(docs);
  for (std::size_t i = 0; i < docs; ++i) {
    corpus.push_back(
        Document{"doc" + std::to_string(i), "", synth_text(rng, vocab, words_per_doc)});
  }
  return corpus;
}

// Folding on plus a synthetic stem dictionary and synonym set, sized like
// a real deployment.
inline Analyzer synth_analyzer(const std::vector<std::string>& vocab) {
  Normalizer normalizer(FoldTable::defaults(), true);
  std::vector<std::string> stop_terms(vocab.begin(),
                                      vocab.begin() + std::min<std::size_t>(20, vocab.size() / 8));
  StopwordList stopwords = StopwordList::from_terms(stop_terms, normalizer);

  std::vector<std::pair<std::string, std::string>> pairs;
  StringSet norm_bases;
  const std::size_t half = vocab.size() / 2;
  for (std::size_t i = vocab.size() / 4; i < half; ++i) {
    norm_bases.insert(normalizer.apply(vocab[i]));
  }
  StringSet used;
  for (std::size_t i = half; i < half + vocab.size() / 4; ++i) {
    const std::string key = normalizer.apply(vocab[i]);
    if (norm_bases.contains(key) || !used.insert(key).second) continue;
    pairs.emplace_back(vocab[i], vocab[vocab.size() / 4 + (i % (half - vocab.size() / 4))]);
  }
  StemDictionary stems = StemDictionary::from_pairs(pairs, normalizer);

  std::vector<std::vector<std::string>> groups;
  for (std::size_t i = vocab.size() / 4; i + 1 < half; i += 2) {
    groups.push_back({vocab[i], vocab[i + 1]});
  }
  SynonymMap synonyms = SynonymMap::from_groups(groups, normalizer, stems);

  return Analyzer(true, true, true, FoldTable::defaults(), std::move(stopwords),
                  std::move(stems), std::move(synonyms));
}

}  // namespace siltir::bench
