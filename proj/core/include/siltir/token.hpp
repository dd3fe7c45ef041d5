#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace siltir {

// One normalized term occurrence. `position` is the ordinal in the
// post-stop-word stream; synonym-injected tokens share the position and
// byte offsets of the token that triggered them.
struct Token {
  std::string text;
  std::uint32_t position = 0;
  std::size_t offset_start = 0;
  std::size_t offset_end = 0;  // exclusive
  bool injected = false;

  friend bool operator==(const Token&, const Token&) = default;
};

}  // namespace siltir
