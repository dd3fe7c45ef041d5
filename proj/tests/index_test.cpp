#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "siltir/errors.hpp"
#include "siltir/index.hpp"
#include "siltir/varint.hpp"
#include "support/generators.hpp"
#include "support/oracle.hpp"
#include "support/temp_dir.hpp"

using namespace siltir;
using siltir::testing::TempDir;

namespace fs = std::filesystem;

namespace {

Analyzer plain_analyzer() {
  return Analyzer(false, false, false, FoldTable{}, {}, {}, {});
}

std::map<std::string, std::uint32_t> tf_of(const PostingList& list) {
  std::map<std::string, std::uint32_t> out;
  for (const auto& p : list.postings) {
    out[std::to_string(p.doc_ordinal)] = p.term_frequency;
  }
  return out;
}

}  // namespace

TEST_CASE("varint round-trips values of every width") {
  std::vector<std::uint64_t> values = {0, 1, 127, 128, 300, 16383, 16384,
                                       (1ULL << 32) - 1, 1ULL << 32,
                                       UINT64_MAX};
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) values.push_back(rng());

  std::vector<std::uint8_t> bytes;
  for (auto v : values) put_varint(bytes, v);
  std::size_t pos = 0;
  for (auto v : values) CHECK(get_varint(bytes, pos) == v);
  CHECK(pos == bytes.size());
}

TEST_CASE("varint decoding rejects truncated input") {
  std::vector<std::uint8_t> bytes = {0x80, 0x80};
  std::size_t pos = 0;
  CHECK_THROWS_AS(get_varint(bytes, pos), NoValidIndexError);
}

TEST_CASE("a fresh writer commits a valid empty index") {
  TempDir dir("siltir-index");
  const Analyzer analyzer = plain_analyzer();
  {
    auto writer = IndexWriter::open(dir.path() / "idx", analyzer);
    CHECK(writer.doc_count() == 0);
    writer.commit();
  }
  const auto reader = IndexReader::open(dir.path() / "idx");
  CHECK(reader.doc_count() == 0);
  CHECK(reader.stats().total_token_count == 0);
  CHECK(reader.stats().avgdl == 0.0);
  CHECK(reader.vocabulary_size() == 0);
  CHECK(reader.analyzer_fingerprint() == analyzer.fingerprint());
}

TEST_CASE("a second writer on a locked directory is refused") {
  TempDir dir("siltir-index");
  const Analyzer analyzer = plain_analyzer();
  auto writer = IndexWriter::open(dir.path() / "idx", analyzer);
  CHECK_THROWS_AS(IndexWriter::open(dir.path() / "idx", analyzer),
                  ConcurrentWriterError);
}

TEST_CASE("an abandoned writer releases its lock without committing") {
  TempDir dir("siltir-index");
  const Analyzer analyzer = plain_analyzer();
  {
    auto writer = IndexWriter::open(dir.path() / "idx", analyzer);
    writer.add_document(Document{"d1", "", "ፋግ"});
  }
  CHECK_THROWS_AS(IndexReader::open(dir.path() / "idx"), NoValidIndexError);
  CHECK_NOTHROW(IndexWriter::open(dir.path() / "idx", analyzer));
}

TEST_CASE("opening a writer over a committed index is an error") {
  TempDir dir("siltir-index");
  const Analyzer analyzer = plain_analyzer();
  {
    auto writer = IndexWriter::open(dir.path() / "idx", analyzer);
    writer.commit();
  }
  CHECK_THROWS_AS(IndexWriter::open(dir.path() / "idx", analyzer),
                  IndexExistsError);
}

TEST_CASE("add_document accumulates postings and document length") {
  TempDir dir("siltir-index");
  const Analyzer analyzer = plain_analyzer();
  auto writer = IndexWriter::open(dir.path() / "idx", analyzer);
  CHECK(writer.add_document(Document{"d1", "", "ፋግ ፋግ ቡድ"}) == 0);
  writer.commit();

  const auto reader = IndexReader::open(dir.path() / "idx");
  CHECK(reader.doc_length(0) == 3);
  const auto fag = reader.postings("ፋግ");
  REQUIRE(fag.postings.size() == 1);
  CHECK(fag.postings[0].term_frequency == 2);
  const auto bud = reader.postings("ቡድ");
  REQUIRE(bud.postings.size() == 1);
  CHECK(bud.postings[0].term_frequency == 1);
}

TEST_CASE("a document analyzing to nothing still gets an ordinal") {
  TempDir dir("siltir-index");
  auto writer = IndexWriter::open(dir.path() / "idx", plain_analyzer());
  CHECK(writer.add_document(Document{"empty", "", "።«»፣"}) == 0);
  CHECK(writer.add_document(Document{"d2", "", "ፋግ"}) == 1);
  writer.commit();

  const auto reader = IndexReader::open(dir.path() / "idx");
  CHECK(reader.doc_count() == 2);
  CHECK(reader.doc_length(0) == 0);
  CHECK(reader.doc_id(0) == "empty");
  CHECK(reader.stats().total_token_count == 1);
}

TEST_CASE("duplicate doc_ids are rejected") {
  TempDir dir("siltir-index");
  auto writer = IndexWriter::open(dir.path() / "idx", plain_analyzer());
  writer.add_document(Document{"d1", "", "ፋግ"});
  CHECK_THROWS_AS(writer.add_document(Document{"d1", "", "ቡድ"}),
                  DuplicateDocumentError);
}

TEST_CASE("a shared term lists both documents in ordinal order") {
  TempDir dir("siltir-index");
  auto writer = IndexWriter::open(dir.path() / "idx", plain_analyzer());
  writer.add_document(Document{"a", "", "ፋግ ቡድ"});
  writer.add_document(Document{"b", "", "ፋግ"});
  writer.commit();

  const auto reader = IndexReader::open(dir.path() / "idx");
  const auto list = reader.postings("ፋግ");
  REQUIRE(list.document_frequency() == 2);
  CHECK(list.postings[0].doc_ordinal == 0);
  CHECK(list.postings[1].doc_ordinal == 1);
}

TEST_CASE("title tokens are indexed ahead of the body") {
  TempDir dir("siltir-index");
  auto writer = IndexWriter::open(dir.path() / "idx", plain_analyzer());
  writer.add_document(Document{"d1", "ቡድ", "ፋግ"});
  writer.commit();
  const auto reader = IndexReader::open(dir.path() / "idx");
  CHECK(reader.doc_length(0) == 2);
  CHECK(reader.postings("ቡድ").document_frequency() == 1);
  CHECK(reader.postings("ፋግ").document_frequency() == 1);
}

TEST_CASE("stats reflect hand-computed lengths") {
  TempDir dir("siltir-index");
  auto writer = IndexWriter::open(dir.path() / "idx", plain_analyzer());
  writer.add_document(Document{"a", "", "ሀ ለ"});
  writer.add_document(Document{"b", "", "ሀ ለ መ"});
  writer.add_document(Document{"c", "", "ሀ ለ መ ረ ሰ"});
  writer.commit();

  const auto stats = IndexReader::open(dir.path() / "idx").stats();
  CHECK(stats.doc_count == 3);
  CHECK(stats.total_token_count == 10);
  CHECK(stats.avgdl == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
  CHECK(stats.doc_lengths == std::vector<std::uint32_t>{2, 3, 5});
}

TEST_CASE("unknown terms yield an empty posting list") {
  TempDir dir("siltir-index");
  auto writer = IndexWriter::open(dir.path() / "idx", plain_analyzer());
  writer.add_document(Document{"a", "", "ሀ"});
  writer.commit();
  const auto reader = IndexReader::open(dir.path() / "idx");
  CHECK(reader.postings("የለም").postings.empty());
  CHECK(reader.postings("የለም").document_frequency() == 0);
}

TEST_CASE("opening a missing or crashed index reports no-valid-index") {
  TempDir dir("siltir-index");
  CHECK_THROWS_AS(IndexReader::open(dir.path() / "nowhere"), NoValidIndexError);

  // Simulated crash before the manifest write: every other file present.
  const Analyzer analyzer = plain_analyzer();
  {
    auto writer = IndexWriter::open(dir.path() / "idx", analyzer);
    writer.add_document(Document{"d1", "", "ፋግ ቡድ"});
    writer.commit();
  }
  fs::remove(dir.path() / "idx" / kManifestFile);
  CHECK(fs::exists(dir.path() / "idx" / kPostingsFile));
  CHECK_THROWS_AS(IndexReader::open(dir.path() / "idx"), NoValidIndexError);
}

TEST_CASE("a tampered format_version is refused") {
  TempDir dir("siltir-index");
  {
    auto writer = IndexWriter::open(dir.path() / "idx", plain_analyzer());
    writer.add_document(Document{"d1", "", "ፋግ"});
    writer.commit();
  }
  const fs::path manifest = dir.path() / "idx" / kManifestFile;
  std::ifstream in(manifest);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  in.close();
  const auto pos = text.find("\"format_version\": 1");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 19, "\"format_version\": 9");
  std::ofstream out(manifest, std::ios::trunc);
  out << text;
  out.close();
  CHECK_THROWS_AS(IndexReader::open(dir.path() / "idx"), UnsupportedVersionError);
}

TEST_CASE("corrupt manifests are refused") {
  TempDir dir("siltir-index");
  fs::create_directories(dir.path() / "idx");
  std::ofstream(dir.path() / "idx" / kManifestFile) << "{not json";
  CHECK_THROWS_AS(IndexReader::open(dir.path() / "idx"), NoValidIndexError);
}

TEST_CASE("persistence round-trip preserves postings and stats exactly") {
  std::mt19937 rng(991);
  int cases = 0;
  for (int iter = 0; iter < 30; ++iter) {
    const auto vocab = siltir::testing::random_vocabulary(rng, 30);
    const Analyzer analyzer = siltir::testing::random_analyzer(rng, vocab, true);
    const auto docs = siltir::testing::random_corpus(rng, vocab, 20);
    const auto oracle = siltir::testing::build_oracle_index(docs, analyzer);

    TempDir dir("siltir-roundtrip");
    {
      auto writer = IndexWriter::open(dir.path() / "idx", analyzer);
      for (const auto& doc : docs) writer.add_document(doc);
      writer.commit();
    }
    const auto reader = IndexReader::open(dir.path() / "idx");

    // Stats identities against the independently-built counts.
    CHECK(reader.doc_count() == docs.size());
    CHECK(reader.stats().total_token_count == oracle.total_tokens);
    CHECK(reader.stats().doc_lengths == oracle.doc_lengths);
    std::uint64_t dl_sum = 0;
    for (auto dl : reader.stats().doc_lengths) dl_sum += dl;
    CHECK(dl_sum == reader.stats().total_token_count);
    if (!docs.empty()) {
      CHECK(reader.stats().avgdl ==
            doctest::Approx(oracle.avgdl()).epsilon(1e-12));
    }

    // Dense ordinals bijective with external ids.
    for (std::uint32_t ord = 0; ord < reader.doc_count(); ++ord) {
      CHECK(reader.doc_id(ord) == docs[ord].doc_id);
    }

    // Expected postings per term from the oracle counts.
    std::map<std::string, std::vector<Posting>> expected;
    for (std::uint32_t ord = 0; ord < oracle.doc_count(); ++ord) {
      for (const auto& [term, tf] : oracle.term_counts[ord]) {
        expected[term].push_back(Posting{ord, tf});
      }
    }
    CHECK(reader.vocabulary_size() == expected.size());
    std::uint64_t tf_total = 0;
    for (const auto& [term, postings] : expected) {
      const auto list = reader.postings(term);
      REQUIRE(list.postings.size() == postings.size());
      for (std::size_t i = 0; i < postings.size(); ++i) {
        CHECK(list.postings[i].doc_ordinal == postings[i].doc_ordinal);
        CHECK(list.postings[i].term_frequency == postings[i].term_frequency);
        tf_total += list.postings[i].term_frequency;
      }
    }
    CHECK(tf_total == reader.stats().total_token_count);

    // Vocabulary is sorted and every stored list strictly ascends.
    const auto vocab_terms = reader.vocabulary();
    for (std::size_t i = 1; i < vocab_terms.size(); ++i) {
      CHECK(vocab_terms[i - 1] < vocab_terms[i]);
    }
    for (const auto& term : vocab_terms) {
      const auto list = reader.postings(term);
      CHECK(list.document_frequency() == list.postings.size());
      for (std::size_t i = 1; i < list.postings.size(); ++i) {
        CHECK(list.postings[i - 1].doc_ordinal < list.postings[i].doc_ordinal);
      }
    }
    ++cases;
  }
  CHECK(cases == 30);
}

TEST_CASE("reader state equals a reopened reader byte for byte") {
  std::mt19937 rng(4242);
  const auto vocab = siltir::testing::random_vocabulary(rng, 20);
  const Analyzer analyzer = siltir::testing::random_analyzer(rng, vocab, true);
  const auto docs = siltir::testing::random_corpus(rng, vocab, 15);

  TempDir dir("siltir-reopen");
  {
    auto writer = IndexWriter::open(dir.path() / "idx", analyzer);
    for (const auto& doc : docs) writer.add_document(doc);
    writer.commit();
  }
  const auto first = IndexReader::open(dir.path() / "idx");
  const auto second = IndexReader::open(dir.path() / "idx");
  CHECK(first.vocabulary() == second.vocabulary());
  CHECK(first.stats().doc_lengths == second.stats().doc_lengths);
  for (const auto& term : first.vocabulary()) {
    CHECK(tf_of(first.postings(term)) == tf_of(second.postings(term)));
  }
}
