#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace siltir::utf8 {

// One decoded code point and the byte range it occupies in the source.
struct CodePoint {
  char32_t value = 0;
  std::size_t offset = 0;  // byte offset of the first byte
  std::size_t size = 0;    // encoded length in bytes
};

// Strict decoder: rejects truncated sequences, overlong encodings,
// surrogates and values above U+10FFFF. Throws EncodingError.
std::vector<CodePoint> decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(char32_t cp);

bool is_whitespace(char32_t cp);

// Token separators: Unicode whitespace, the Ethiopic punctuation block
// U+1360..U+1368, guillemets « », and ASCII punctuation/symbols.
bool is_separator(char32_t cp);

}  // namespace siltir::utf8
