#pragma once

// Deterministic random generators for property tests. Everything takes an
// explicit std::mt19937 so failures reproduce from the seed.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "siltir/analyzer.hpp"
#include "siltir/index.hpp"
#include "siltir/utf8.hpp"

namespace siltir::testing {

// Ethiopic consonant rows used to synthesize words. The first four rows
// start homophone families so folding has something to chew on.
inline constexpr char32_t kFidelRows[] = {
    0x1200,  // ሀ
    0x1210,  // ሐ (folds to ሀ)
    0x1220,  // ሠ (folds to ሰ)
    0x12D0,  // ዐ (folds to አ)
    0x1230,  // ሰ
    0x1208,  // ለ
    0x1218,  // መ
    0x1228,  // ረ
    0x1240,  // ቀ
    0x1260,  // በ
    0x1270,  // ተ
    0x1290,  // ነ
    0x12A0,  // አ
    0x12A8,  // ከ
    0x12C8,  // ወ
    0x12E8,  // የ
    0x12F0,  // ደ
    0x1300,  // ጀ
    0x1308,  // ገ
    0x1320,  // ጠ
};

inline std::string random_word(std::mt19937& rng, int min_len = 2,
                               int max_len = 5) {
  std::uniform_int_distribution<int> len_dist(min_len, max_len);
  std::uniform_int_distribution<std::size_t> row_dist(0, std::size(kFidelRows) - 1);
  std::uniform_int_distribution<int> order_dist(0, 6);
  const int len = len_dist(rng);
  std::string word;
  for (int i = 0; i < len; ++i) {
    utf8::append(word, kFidelRows[row_dist(rng)] + order_dist(rng));
  }
  return word;
}

// Distinct words; collisions are re-rolled.
inline std::vector<std::string> random_vocabulary(std::mt19937& rng,
                                                  std::size_t size) {
  std::vector<std::string> vocab;
  StringSet seen;
  while (vocab.size() < size) {
    std::string word = random_word(rng);
    if (seen.insert(word).second) vocab.push_back(std::move(word));
  }
  return vocab;
}

inline std::string join_with_random_separators(const std::vector<std::string>& words,
                                               std::mt19937& rng) {
  static const char* kSeparators[] = {" ", " ", " ", "፣ ", "። ", ", ", "  ", "\n",
                                      "« ", "» "};
  std::uniform_int_distribution<std::size_t> sep_dist(0, std::size(kSeparators) - 1);
  std::string text;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) text += kSeparators[sep_dist(rng)];
    text += words[i];
  }
  return text;
}

inline std::string random_text(std::mt19937& rng,
                               const std::vector<std::string>& vocab,
                               std::size_t min_words, std::size_t max_words) {
  std::uniform_int_distribution<std::size_t> count_dist(min_words, max_words);
  std::uniform_int_distribution<std::size_t> word_dist(0, vocab.size() - 1);
  std::vector<std::string> words;
  const std::size_t count = count_dist(rng);
  words.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    words.push_back(vocab[word_dist(rng)]);
  }
  return join_with_random_separators(words, rng);
}

// Analyzer over a random slice of the vocabulary: the tail of the vocab
// becomes variants stemmed onto bases, some bases pair up as synonyms,
// and a few words become stop words. Load invariants hold by
// construction: stem keys and values never overlap.
inline Analyzer random_analyzer(std::mt19937& rng,
                                const std::vector<std::string>& vocab,
                                bool with_resources) {
  std::bernoulli_distribution coin(0.5);
  const bool fold = coin(rng);
  if (!with_resources || vocab.size() < 8) {
    return Analyzer(fold, false, false, FoldTable::defaults(), StopwordList{},
                    StemDictionary{}, SynonymMap{});
  }
  Normalizer normalizer(FoldTable::defaults(), fold);

  const std::size_t n = vocab.size();
  const std::size_t base_count = n / 4;
  const std::size_t variant_count = n / 4;

  // Keys and values must stay disjoint after normalization or the
  // fixed-point load check trips.
  StringSet norm_bases;
  for (std::size_t i = 0; i < base_count; ++i) {
    norm_bases.insert(normalizer.apply(vocab[i]));
  }
  std::vector<std::pair<std::string, std::string>> stem_pairs;
  StringSet used_keys;
  std::uniform_int_distribution<std::size_t> base_dist(0, base_count - 1);
  for (std::size_t i = 0; i < variant_count; ++i) {
    const std::string& variant = vocab[base_count + i];
    const std::string norm_variant = normalizer.apply(variant);
    if (norm_bases.contains(norm_variant)) continue;
    if (!used_keys.insert(norm_variant).second) continue;
    stem_pairs.emplace_back(variant, vocab[base_dist(rng)]);
  }
  StemDictionary stems = StemDictionary::from_pairs(stem_pairs, normalizer);

  std::vector<std::vector<std::string>> groups;
  for (std::size_t i = 0; i + 1 < base_count; i += 2) {
    if (coin(rng)) groups.push_back({vocab[i], vocab[i + 1]});
  }
  SynonymMap synonyms = SynonymMap::from_groups(groups, normalizer, stems);

  std::vector<std::string> stop_terms;
  for (std::size_t i = base_count + variant_count;
       i < std::min(n, base_count + variant_count + 3); ++i) {
    stop_terms.push_back(vocab[i]);
  }
  StopwordList stopwords = StopwordList::from_terms(stop_terms, normalizer);

  return Analyzer(fold, coin(rng), coin(rng), FoldTable::defaults(),
                  std::move(stopwords), std::move(stems), std::move(synonyms));
}

inline std::vector<Document> random_corpus(std::mt19937& rng,
                                           const std::vector<std::string>& vocab,
                                           std::size_t max_docs) {
  std::uniform_int_distribution<std::size_t> doc_count_dist(1, max_docs);
  std::bernoulli_distribution with_title(0.3);
  const std::size_t count = doc_count_dist(rng);
  std::vector<Document> docs;
  docs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Document doc;
    doc.doc_id = "doc" + std::to_string(i);
    doc.body = random_text(rng, vocab, 1, 30);
    if (with_title(rng)) doc.title = random_text(rng, vocab, 1, 3);
    docs.push_back(std::move(doc));
  }
  return docs;
}

// 1..5 terms drawn from the vocabulary, occasionally one that no document
// contains.
inline std::string random_query(std::mt19937& rng,
                                const std::vector<std::string>& vocab) {
  std::uniform_int_distribution<int> term_count_dist(1, 5);
  std::uniform_int_distribution<std::size_t> word_dist(0, vocab.size() - 1);
  std::bernoulli_distribution oov(0.1);
  std::string query;
  const int count = term_count_dist(rng);
  for (int i = 0; i < count; ++i) {
    if (i > 0) query += ' ';
    query += oov(rng) ? random_word(rng, 6, 8) : vocab[word_dist(rng)];
  }
  return query;
}

}  // namespace siltir::testing
