#pragma once

#include <cmath>
#include <cstdint>

#include "siltir/errors.hpp"

namespace siltir {

// Okapi BM25 with the non-negative idf variant,
//   idf = ln(1 + (N - df + 0.5) / (df + 0.5)),
// so every matching document scores > 0. Defaults follow common practice;
// both parameters are overridable through the CLI and config file.
struct BM25Params {
  double k1 = 1.2;  // term-frequency saturation, ≥ 0
  double b = 0.75;  // length-normalization strength, in [0, 1]

  void validate() const {
    if (!(k1 >= 0.0)) throw Error("BM25 k1 must be >= 0");
    if (!(b >= 0.0 && b <= 1.0)) throw Error("BM25 b must be in [0, 1]");
  }
};

inline double idf(std::uint64_t doc_count, std::uint64_t document_frequency) {
  if (doc_count == 0) {
    throw UndefinedStatisticsError("idf undefined for an empty index");
  }
  const double n = static_cast<double>(doc_count);
  const double df = static_cast<double>(document_frequency);
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

inline double term_score(std::uint32_t tf, std::uint32_t dl, double avgdl,
                         const BM25Params& params, double idf_value) {
  if (tf == 0) return 0.0;
  const double f = static_cast<double>(tf);
  const double norm =
      params.k1 * (1.0 - params.b + params.b * static_cast<double>(dl) / avgdl);
  return idf_value * f * (params.k1 + 1.0) / (f + norm);
}

}  // namespace siltir
