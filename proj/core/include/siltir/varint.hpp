#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siltir/errors.hpp"

namespace siltir {

// LEB128-style unsigned varint, low 7 bits first.
inline void put_varint(std::vector<std::uint8_t>& out, std::uint64_t value) {
  while (value >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(value) | 0x80);
    value >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(value));
}

// Reads one varint starting at `pos`, advancing it. Throws on truncation
// or a value wider than 64 bits.
inline std::uint64_t get_varint(const std::vector<std::uint8_t>& in,
                                std::size_t& pos) {
  std::uint64_t value = 0;
  int shift = 0;
  while (true) {
    if (pos >= in.size() || shift > 63) {
      throw NoValidIndexError("corrupt postings: bad varint at byte " +
                              std::to_string(pos));
    }
    const std::uint8_t byte = in[pos++];
    value |= static_cast<std::uint64_t>(byte & 0x7F) << shift;
    if ((byte & 0x80) == 0) return value;
    shift += 7;
  }
}

}  // namespace siltir
