#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "siltir/analyzer.hpp"
#include "siltir/string_map.hpp"

namespace siltir {

// An external-id'd text unit ingested from the corpus.
struct Document {
  std::string doc_id;
  std::string title;  // optional, indexed before the body
  std::string body;
};

struct Posting {
  std::uint32_t doc_ordinal = 0;
  std::uint32_t term_frequency = 0;  // ≥ 1, synonym-injected tokens included
};

struct PostingList {
  std::string term;
  std::vector<Posting> postings;  // strictly ascending doc_ordinal

  std::size_t document_frequency() const { return postings.size(); }
};

struct IndexStats {
  std::uint32_t doc_count = 0;
  std::uint64_t total_token_count = 0;
  double avgdl = 0.0;  // total_token_count / doc_count, 0 when empty
  std::vector<std::uint32_t> doc_lengths;
};

inline constexpr std::uint32_t kIndexFormatVersion = 1;

inline constexpr std::string_view kManifestFile = "manifest";
inline constexpr std::string_view kTermsFile = "terms";
inline constexpr std::string_view kPostingsFile = "postings";
inline constexpr std::string_view kDocLengthsFile = "doclens";
inline constexpr std::string_view kLockFile = "lock";

// Single-segment, write-once builder. Holds the directory lock from
// open() until commit() or destruction. Documents are analyzed with the
// bound config (at_query_time=false) as they are added; commit() writes
// postings, terms, doclens and finally the manifest, whose presence marks
// the index valid.
class IndexWriter {
 public:
  IndexWriter(const IndexWriter&) = delete;
  IndexWriter& operator=(const IndexWriter&) = delete;
  IndexWriter(IndexWriter&&) = delete;
  IndexWriter& operator=(IndexWriter&&) = delete;
  ~IndexWriter();

  static IndexWriter open(const std::filesystem::path& directory,
                          Analyzer analyzer);

  std::uint32_t add_document(const Document& doc);

  void commit();

  std::uint32_t doc_count() const { return static_cast<std::uint32_t>(doc_ids_.size()); }
  const std::string& analyzer_fingerprint() const { return analyzer_.fingerprint(); }

 private:
  IndexWriter(std::filesystem::path directory, Analyzer analyzer);

  std::filesystem::path directory_;
  Analyzer analyzer_;  // owned: the writer outlives any caller copy
  bool committed_ = false;

  std::vector<std::string> doc_ids_;        // ordinal → external id
  StringSet seen_ids_;
  std::vector<std::uint32_t> doc_lengths_;
  std::uint64_t total_tokens_ = 0;
  StringMap<std::vector<Posting>> postings_;
};

// Immutable view of a committed index. Postings are decoded on demand
// from an in-memory copy of the postings file; any number of readers and
// concurrent searches may share one instance.
class IndexReader {
 public:
  static IndexReader open(const std::filesystem::path& directory);

  // Empty list (df = 0) for unknown terms.
  PostingList postings(std::string_view term) const;

  const IndexStats& stats() const { return stats_; }
  const std::string& analyzer_fingerprint() const { return fingerprint_; }

  std::uint32_t doc_count() const { return stats_.doc_count; }
  const std::string& doc_id(std::uint32_t ordinal) const;
  std::uint32_t doc_length(std::uint32_t ordinal) const;

  // Lexicographically sorted vocabulary.
  std::vector<std::string> vocabulary() const;
  std::size_t vocabulary_size() const { return terms_.size(); }

 private:
  struct TermEntry {
    std::string term;
    std::uint32_t document_frequency = 0;
    std::uint64_t postings_offset = 0;
  };

  IndexReader() = default;

  IndexStats stats_;
  std::string fingerprint_;
  std::vector<std::string> doc_ids_;
  std::vector<TermEntry> terms_;  // sorted by term, byte order
  std::vector<std::uint8_t> postings_bytes_;
};

}  // namespace siltir
