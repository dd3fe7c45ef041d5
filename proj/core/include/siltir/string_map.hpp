#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

namespace siltir {

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
  }
};

struct StringEqual {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const noexcept {
    return a == b;
  }
};

template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, StringEqual>;

using StringSet = std::unordered_set<std::string, StringHash, StringEqual>;

}  // namespace siltir
