#pragma once

#include <stdexcept>
#include <string>

namespace siltir {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input text is not valid UTF-8.
class EncodingError : public Error {
 public:
  using Error::Error;
};

// A resource file (stop words, stem dictionary, synonyms, fold table,
// engine config) failed to load or violated a load-time invariant.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// A live writer already holds the index directory.
class ConcurrentWriterError : public IndexError {
 public:
  using IndexError::IndexError;
};

// The directory already holds a committed index; rebuilds go elsewhere.
class IndexExistsError : public IndexError {
 public:
  using IndexError::IndexError;
};

class DuplicateDocumentError : public IndexError {
 public:
  using IndexError::IndexError;
};

// No committed index in the directory (missing or corrupt manifest).
class NoValidIndexError : public IndexError {
 public:
  using IndexError::IndexError;
};

class UnsupportedVersionError : public IndexError {
 public:
  using IndexError::IndexError;
};

class CommitError : public IndexError {
 public:
  using IndexError::IndexError;
};

// Query was analyzed with a config whose fingerprint differs from the
// one recorded in the index manifest.
class AnalyzerMismatchError : public Error {
 public:
  using Error::Error;
};

// Scoring asked for statistics of an empty index.
class UndefinedStatisticsError : public Error {
 public:
  using Error::Error;
};

// Evaluation input problems: malformed qrels/run/query files, empty
// evaluable query set, mismatched query sets in a comparison.
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace siltir
