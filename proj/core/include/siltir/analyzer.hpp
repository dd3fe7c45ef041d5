#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "siltir/resources.hpp"
#include "siltir/token.hpp"

namespace siltir {

// Pipeline toggles and resource file locations, prior to loading.
// Empty paths mean "no resource"; an empty fold_table_file selects the
// shipped default table.
struct AnalyzerOptions {
  bool fold_homophones = true;
  bool enable_stemming = true;
  bool enable_synonyms = true;
  std::filesystem::path stopword_file;
  std::filesystem::path stem_file;
  std::filesystem::path synonym_file;
  std::filesystem::path fold_table_file;
};

// The index/query text pipeline: tokenize → normalize → stop-word filter
// → stem → synonym expansion. Immutable after construction; safe to share
// across threads. Query-time analysis skips synonym expansion so the
// injected terms exist only in the index.
class Analyzer {
 public:
  Analyzer();
  Analyzer(bool fold_homophones, bool enable_stemming, bool enable_synonyms,
           FoldTable fold_table, StopwordList stopwords, StemDictionary stems,
           SynonymMap synonyms);

  // Loads and validates every referenced resource file.
  static Analyzer load(const AnalyzerOptions& options);

  // Splits on Unicode whitespace, Ethiopic punctuation U+1360..U+1368,
  // guillemets and ASCII punctuation/symbols. ASCII letters are
  // lowercased. Positions run 0,1,2,... in source order; offsets are
  // byte ranges into `text`. Throws EncodingError on invalid UTF-8.
  static std::vector<Token> tokenize(std::string_view text);

  static std::vector<Token> fold_tokens(std::vector<Token> tokens,
                                        const Normalizer& normalizer);
  // Drops listed tokens and re-assigns positions 0,1,2,... over survivors.
  static std::vector<Token> remove_stopwords(std::vector<Token> tokens,
                                             const StopwordList& stopwords);
  static std::vector<Token> stem_tokens(std::vector<Token> tokens,
                                        const StemDictionary& stems);
  // Injects the other members of each token's synonym class at the same
  // position and offsets, originals first. Texts already present at a
  // position are not injected again, so expansion is closed.
  static std::vector<Token> expand_synonyms(std::vector<Token> tokens,
                                            const SynonymMap& synonyms);

  Token normalize(Token token) const;
  Token stem(Token token) const;

  std::vector<Token> analyze(std::string_view text, bool at_query_time) const;

  // Term strings only, in stream order.
  std::vector<std::string> analyze_terms(std::string_view text,
                                         bool at_query_time) const;

  bool fold_homophones() const { return normalizer_.folding(); }
  bool stemming_enabled() const { return enable_stemming_; }
  bool synonyms_enabled() const { return enable_synonyms_; }
  const Normalizer& normalizer() const { return normalizer_; }
  const StopwordList& stopwords() const { return stopwords_; }
  const StemDictionary& stem_dictionary() const { return stems_; }
  const SynonymMap& synonyms() const { return synonyms_; }

  // Deterministic digest of the toggles and the loaded resource
  // contents. Readers refuse queries analyzed under a different one.
  const std::string& fingerprint() const { return fingerprint_; }

 private:
  Normalizer normalizer_;
  bool enable_stemming_ = true;
  bool enable_synonyms_ = true;
  StopwordList stopwords_;
  StemDictionary stems_;
  SynonymMap synonyms_;
  std::string fingerprint_;
};

}  // namespace siltir
