#include <algorithm>
#include <fstream>
#include <system_error>

#include <json.hpp>

#include "siltir/errors.hpp"
#include "siltir/index.hpp"
#include "siltir/varint.hpp"

namespace siltir {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CommitError("cannot open for writing: " + path.string());
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  out.flush();
  if (!out) throw CommitError("write failed: " + path.string());
}

void write_file(const fs::path& path, const std::string& content) {
  write_file(path, content.data(), content.size());
}

}  // namespace

IndexWriter::IndexWriter(fs::path directory, Analyzer analyzer)
    : directory_(std::move(directory)), analyzer_(std::move(analyzer)) {}

IndexWriter IndexWriter::open(const fs::path& directory, Analyzer analyzer) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    throw IndexError("cannot create index directory " + directory.string() + ": " +
                     ec.message());
  }
  if (fs::exists(directory / kLockFile)) {
    throw ConcurrentWriterError("index directory is locked by a live writer: " +
                                directory.string());
  }
  if (fs::exists(directory / kManifestFile)) {
    throw IndexExistsError("directory already holds a committed index: " +
                           directory.string());
  }
  {
    std::ofstream lock(directory / kLockFile, std::ios::binary | std::ios::trunc);
    if (!lock) {
      throw IndexError("index directory is not writable: " + directory.string());
    }
  }
  return IndexWriter(directory, std::move(analyzer));
}

IndexWriter::~IndexWriter() {
  if (!committed_) {
    std::error_code ec;
    fs::remove(directory_ / kLockFile, ec);
  }
}

std::uint32_t IndexWriter::add_document(const Document& doc) {
  if (committed_) throw IndexError("writer already committed");
  if (doc.doc_id.empty()) throw IndexError("document with empty doc_id");
  if (!seen_ids_.insert(doc.doc_id).second) {
    throw DuplicateDocumentError("duplicate doc_id: " + doc.doc_id);
  }

  std::string text;
  if (doc.title.empty()) {
    text = doc.body;
  } else {
    text.reserve(doc.title.size() + doc.body.size() + 1);
    text.append(doc.title);
    text.push_back('\n');
    text.append(doc.body);
  }

  const auto ordinal = static_cast<std::uint32_t>(doc_ids_.size());
  const std::vector<Token> tokens = analyzer_.analyze(text, /*at_query_time=*/false);

  StringMap<std::uint32_t> tf;
  for (const auto& token : tokens) {
    ++tf[token.text];
  }
  for (auto& [term, count] : tf) {
    postings_[term].push_back(Posting{ordinal, count});
  }

  doc_ids_.push_back(doc.doc_id);
  doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
  total_tokens_ += tokens.size();
  return ordinal;
}

void IndexWriter::commit() {
  if (committed_) throw IndexError("writer already committed");

  std::vector<const std::string*> terms;
  terms.reserve(postings_.size());
  for (const auto& [term, list] : postings_) {
    terms.push_back(&term);
  }
  std::sort(terms.begin(), terms.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });

  // Postings: per term, delta-encoded ordinals and term frequencies.
  std::vector<std::uint8_t> postings_bytes;
  std::string terms_text;
  for (const std::string* term : terms) {
    const auto& list = postings_.find(*term)->second;
    terms_text += *term;
    terms_text += '\t';
    terms_text += std::to_string(list.size());
    terms_text += '\t';
    terms_text += std::to_string(postings_bytes.size());
    terms_text += '\n';
    std::uint32_t prev = 0;
    bool first = true;
    for (const auto& posting : list) {
      put_varint(postings_bytes, first ? posting.doc_ordinal
                                       : posting.doc_ordinal - prev - 1);
      put_varint(postings_bytes, posting.term_frequency);
      prev = posting.doc_ordinal;
      first = false;
    }
  }

  std::vector<std::uint8_t> doclens_bytes;
  doclens_bytes.reserve(doc_lengths_.size() * 4);
  for (std::uint32_t dl : doc_lengths_) {
    doclens_bytes.push_back(static_cast<std::uint8_t>(dl));
    doclens_bytes.push_back(static_cast<std::uint8_t>(dl >> 8));
    doclens_bytes.push_back(static_cast<std::uint8_t>(dl >> 16));
    doclens_bytes.push_back(static_cast<std::uint8_t>(dl >> 24));
  }

  write_file(directory_ / kPostingsFile, postings_bytes.data(), postings_bytes.size());
  write_file(directory_ / kTermsFile, terms_text);
  write_file(directory_ / kDocLengthsFile, doclens_bytes.data(), doclens_bytes.size());

  nlohmann::json manifest;
  manifest["format_version"] = kIndexFormatVersion;
  manifest["analyzer_fingerprint"] = analyzer_.fingerprint();
  manifest["doc_count"] = doc_ids_.size();
  manifest["total_token_count"] = total_tokens_;
  manifest["doc_ids"] = doc_ids_;

  // Manifest lands last, via rename: its presence defines a valid index.
  const fs::path tmp = directory_ / (std::string(kManifestFile) + ".tmp");
  write_file(tmp, manifest.dump(2) + "\n");
  std::error_code ec;
  fs::rename(tmp, directory_ / kManifestFile, ec);
  if (ec) throw CommitError("cannot finalize manifest: " + ec.message());

  fs::remove(directory_ / kLockFile, ec);
  committed_ = true;
}

}  // namespace siltir
