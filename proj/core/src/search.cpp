#include "siltir/search.hpp"

#include <algorithm>
#include <unordered_map>

#include "siltir/errors.hpp"

namespace siltir {

namespace {

void check_fingerprint(const Query& query, const IndexReader& reader) {
  if (query.analyzer_fingerprint != reader.analyzer_fingerprint()) {
    throw AnalyzerMismatchError("query analyzer fingerprint " +
                                query.analyzer_fingerprint +
                                " does not match index fingerprint " +
                                reader.analyzer_fingerprint());
  }
}

// Distinct terms in first-occurrence order with their multiplicities.
std::vector<std::pair<std::string_view, std::uint32_t>> distinct_terms(
    const Query& query) {
  std::vector<std::pair<std::string_view, std::uint32_t>> out;
  StringMap<std::size_t> slot;
  for (const auto& term : query.terms) {
    auto it = slot.find(term);
    if (it == slot.end()) {
      slot.emplace(term, out.size());
      out.emplace_back(term, 1);
    } else {
      ++out[it->second].second;
    }
  }
  return out;
}

}  // namespace

Query make_query(const Analyzer& analyzer, std::string_view text) {
  Query query;
  query.raw = std::string(text);
  query.terms = analyzer.analyze_terms(text, /*at_query_time=*/true);
  query.analyzer_fingerprint = analyzer.fingerprint();
  return query;
}

double score_document(const Query& query, std::uint32_t doc_ordinal,
                      const IndexReader& reader, const BM25Params& params) {
  check_fingerprint(query, reader);
  params.validate();
  const IndexStats& stats = reader.stats();
  if (query.terms.empty() || stats.doc_count == 0) return 0.0;

  const std::uint32_t dl = reader.doc_length(doc_ordinal);
  double score = 0.0;
  for (const auto& [term, multiplicity] : distinct_terms(query)) {
    const PostingList list = reader.postings(term);
    const auto it = std::lower_bound(
        list.postings.begin(), list.postings.end(), doc_ordinal,
        [](const Posting& p, std::uint32_t ord) { return p.doc_ordinal < ord; });
    if (it == list.postings.end() || it->doc_ordinal != doc_ordinal) continue;
    const double w = idf(stats.doc_count, list.document_frequency());
    score += static_cast<double>(multiplicity) *
             term_score(it->term_frequency, dl, stats.avgdl, params, w);
  }
  return score;
}

SearchResult search(const IndexReader& reader, const Query& query, std::size_t k,
                    const BM25Params& params) {
  check_fingerprint(query, reader);
  params.validate();
  if (k == 0) throw Error("search depth k must be >= 1");

  SearchResult result;
  if (query.terms.empty()) {
    result.empty_query = true;
    return result;
  }
  const IndexStats& stats = reader.stats();
  if (stats.doc_count == 0) return result;

  std::unordered_map<std::uint32_t, double> accumulators;
  for (const auto& [term, multiplicity] : distinct_terms(query)) {
    const PostingList list = reader.postings(term);
    if (list.postings.empty()) continue;
    const double w = idf(stats.doc_count, list.document_frequency());
    for (const auto& posting : list.postings) {
      accumulators[posting.doc_ordinal] +=
          static_cast<double>(multiplicity) *
          term_score(posting.term_frequency, stats.doc_lengths[posting.doc_ordinal],
                     stats.avgdl, params, w);
    }
  }

  result.hits.reserve(accumulators.size());
  for (const auto& [ordinal, score] : accumulators) {
    if (score > 0.0) {
      result.hits.push_back(ScoredDoc{reader.doc_id(ordinal), score});
    }
  }
  const std::size_t cutoff = std::min(k, result.hits.size());
  std::partial_sort(result.hits.begin(), result.hits.begin() + cutoff,
                    result.hits.end(), [](const ScoredDoc& a, const ScoredDoc& b) {
                      if (a.score != b.score) return a.score > b.score;
                      return a.doc_id < b.doc_id;
                    });
  result.hits.resize(cutoff);
  return result;
}

}  // namespace siltir
