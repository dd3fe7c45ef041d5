#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "siltir/analyzer.hpp"
#include "siltir/bm25.hpp"
#include "siltir/index.hpp"

namespace siltir {

// A query analyzed at query time (no synonym expansion). Carries the
// fingerprint of the analyzer that produced it; readers with a different
// stored fingerprint refuse it.
struct Query {
  std::string raw;
  std::vector<std::string> terms;  // bag, multiplicity preserved
  std::string analyzer_fingerprint;

  bool empty() const { return terms.empty(); }
};

Query make_query(const Analyzer& analyzer, std::string_view text);

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;
};

struct SearchResult {
  std::vector<ScoredDoc> hits;  // score descending, doc_id ascending on ties
  bool empty_query = false;     // no terms survived analysis; not an error
};

// BM25 score of one document: sum of per-term contributions over the
// query bag, one contribution per occurrence of a repeated term.
double score_document(const Query& query, std::uint32_t doc_ordinal,
                      const IndexReader& reader, const BM25Params& params);

// Top-k documents with score > 0. Documents matching no query term never
// appear. Term-at-a-time accumulation; ties break on ascending doc_id.
SearchResult search(const IndexReader& reader, const Query& query, std::size_t k,
                    const BM25Params& params = {});

}  // namespace siltir
