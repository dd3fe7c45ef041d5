#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "siltir/errors.hpp"
#include "siltir/index.hpp"
#include "siltir/varint.hpp"

namespace siltir {

namespace fs = std::filesystem;

namespace {

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NoValidIndexError("missing index file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

std::vector<std::uint8_t> read_binary_file(const fs::path& path) {
  std::string text = read_text_file(path);
  return {text.begin(), text.end()};
}

}  // namespace

IndexReader IndexReader::open(const fs::path& directory) {
  const fs::path manifest_path = directory / kManifestFile;
  if (!fs::exists(manifest_path)) {
    throw NoValidIndexError("no committed index in " + directory.string());
  }

  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(read_text_file(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw NoValidIndexError("corrupt manifest: " + std::string(e.what()));
  }

  IndexReader reader;
  try {
    const auto version = manifest.at("format_version").get<std::uint32_t>();
    if (version != kIndexFormatVersion) {
      throw UnsupportedVersionError("unsupported index format_version " +
                                    std::to_string(version) + ", expected " +
                                    std::to_string(kIndexFormatVersion));
    }
    reader.fingerprint_ = manifest.at("analyzer_fingerprint").get<std::string>();
    reader.stats_.doc_count = manifest.at("doc_count").get<std::uint32_t>();
    reader.stats_.total_token_count =
        manifest.at("total_token_count").get<std::uint64_t>();
    reader.doc_ids_ = manifest.at("doc_ids").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw NoValidIndexError("corrupt manifest: " + std::string(e.what()));
  }
  if (reader.doc_ids_.size() != reader.stats_.doc_count) {
    throw NoValidIndexError("corrupt manifest: doc_id table size mismatch");
  }

  const std::vector<std::uint8_t> doclens = read_binary_file(directory / kDocLengthsFile);
  if (doclens.size() != static_cast<std::size_t>(reader.stats_.doc_count) * 4) {
    throw NoValidIndexError("corrupt doclens: size mismatch");
  }
  reader.stats_.doc_lengths.reserve(reader.stats_.doc_count);
  std::uint64_t dl_sum = 0;
  for (std::size_t i = 0; i < doclens.size(); i += 4) {
    const std::uint32_t dl = static_cast<std::uint32_t>(doclens[i]) |
                             (static_cast<std::uint32_t>(doclens[i + 1]) << 8) |
                             (static_cast<std::uint32_t>(doclens[i + 2]) << 16) |
                             (static_cast<std::uint32_t>(doclens[i + 3]) << 24);
    reader.stats_.doc_lengths.push_back(dl);
    dl_sum += dl;
  }
  if (dl_sum != reader.stats_.total_token_count) {
    throw NoValidIndexError("corrupt doclens: sum disagrees with manifest");
  }
  reader.stats_.avgdl =
      reader.stats_.doc_count == 0
          ? 0.0
          : static_cast<double>(reader.stats_.total_token_count) /
                static_cast<double>(reader.stats_.doc_count);

  const std::string terms_text = read_text_file(directory / kTermsFile);
  std::size_t pos = 0;
  std::size_t lineno = 0;
  while (pos < terms_text.size()) {
    ++lineno;
    std::size_t eol = terms_text.find('\n', pos);
    if (eol == std::string::npos) eol = terms_text.size();
    const std::string_view line(terms_text.data() + pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    const auto tab1 = line.find('\t');
    const auto tab2 = tab1 == std::string_view::npos
                          ? std::string_view::npos
                          : line.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos) {
      throw NoValidIndexError("corrupt terms file at line " + std::to_string(lineno));
    }
    TermEntry entry;
    entry.term = std::string(line.substr(0, tab1));
    try {
      entry.document_frequency =
          static_cast<std::uint32_t>(std::stoul(std::string(line.substr(tab1 + 1, tab2 - tab1 - 1))));
      entry.postings_offset = std::stoull(std::string(line.substr(tab2 + 1)));
    } catch (const std::exception&) {
      throw NoValidIndexError("corrupt terms file at line " + std::to_string(lineno));
    }
    if (!reader.terms_.empty() && reader.terms_.back().term >= entry.term) {
      throw NoValidIndexError("corrupt terms file: not strictly sorted");
    }
    reader.terms_.push_back(std::move(entry));
  }

  reader.postings_bytes_ = read_binary_file(directory / kPostingsFile);
  return reader;
}

PostingList IndexReader::postings(std::string_view term) const {
  PostingList list;
  list.term = std::string(term);
  const auto it = std::lower_bound(
      terms_.begin(), terms_.end(), term,
      [](const TermEntry& entry, std::string_view t) { return entry.term < t; });
  if (it == terms_.end() || it->term != term) return list;

  list.postings.reserve(it->document_frequency);
  std::size_t pos = it->postings_offset;
  std::uint32_t ordinal = 0;
  for (std::uint32_t i = 0; i < it->document_frequency; ++i) {
    const auto gap = static_cast<std::uint32_t>(get_varint(postings_bytes_, pos));
    ordinal = (i == 0) ? gap : ordinal + gap + 1;
    const auto tf = static_cast<std::uint32_t>(get_varint(postings_bytes_, pos));
    if (ordinal >= stats_.doc_count || tf == 0) {
      throw NoValidIndexError("corrupt postings for term: " + list.term);
    }
    list.postings.push_back(Posting{ordinal, tf});
  }
  return list;
}

const std::string& IndexReader::doc_id(std::uint32_t ordinal) const {
  if (ordinal >= doc_ids_.size()) {
    throw IndexError("doc ordinal out of range: " + std::to_string(ordinal));
  }
  return doc_ids_[ordinal];
}

std::uint32_t IndexReader::doc_length(std::uint32_t ordinal) const {
  if (ordinal >= stats_.doc_lengths.size()) {
    throw IndexError("doc ordinal out of range: " + std::to_string(ordinal));
  }
  return stats_.doc_lengths[ordinal];
}

std::vector<std::string> IndexReader::vocabulary() const {
  std::vector<std::string> terms;
  terms.reserve(terms_.size());
  for (const auto& entry : terms_) {
    terms.push_back(entry.term);
  }
  return terms;
}

}  // namespace siltir
