#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "siltir/string_map.hpp"

namespace siltir {

// Character-wise homophone fold map. Targets must be fixed points of the
// table so that folding is idempotent; from_file rejects chained entries.
class FoldTable {
 public:
  FoldTable() = default;

  // Ethiopic families with identical pronunciation, folded order-wise
  // across the seven fidel orders: ሐ/ኀ→ሀ, ሠ→ሰ, ዐ→አ, ፀ→ጸ.
  static FoldTable defaults();

  // One "fromChar<TAB>toChar" pair per line; '#' comments and blank
  // lines ignored.
  static FoldTable from_file(const std::filesystem::path& path);
  static FoldTable from_pairs(const std::vector<std::pair<char32_t, char32_t>>& pairs);

  char32_t fold(char32_t cp) const;
  std::string fold(std::string_view term) const;

  const std::map<char32_t, char32_t>& entries() const { return map_; }
  bool empty() const { return map_.empty(); }

 private:
  std::map<char32_t, char32_t> map_;
};

// The term normalizer: homophone folding when enabled, identity otherwise.
// ASCII lowercasing happens earlier, in the tokenizer.
class Normalizer {
 public:
  Normalizer() = default;
  Normalizer(FoldTable table, bool fold_enabled)
      : table_(std::move(table)), fold_(fold_enabled) {}

  std::string apply(std::string_view term) const;
  bool folding() const { return fold_; }
  const FoldTable& table() const { return table_; }

 private:
  FoldTable table_;
  bool fold_ = false;
};

// Set of terms dropped from the token stream. Entries are passed through
// the normalizer at load so matching is insensitive to homophone spelling.
class StopwordList {
 public:
  StopwordList() = default;

  // One term per line; '#' comments and blank lines ignored.
  static StopwordList from_file(const std::filesystem::path& path,
                                const Normalizer& normalizer);
  static StopwordList from_terms(const std::vector<std::string>& terms,
                                 const Normalizer& normalizer);

  bool contains(std::string_view term) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Sorted, for deterministic fingerprinting.
  const std::set<std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::set<std::string, std::less<>> entries_;
};

// Surface-form to stem lookup table. Keys and values are normalized at
// load; every value must be a fixed point of the mapping.
class StemDictionary {
 public:
  StemDictionary() = default;

  // "surface<TAB>stem" per line; duplicate surface keys are a load error.
  static StemDictionary from_file(const std::filesystem::path& path,
                                  const Normalizer& normalizer);
  static StemDictionary from_pairs(
      const std::vector<std::pair<std::string, std::string>>& pairs,
      const Normalizer& normalizer);

  // Lookup result if present, else the term itself.
  std::string stem(std::string_view term) const;
  const std::string* lookup(std::string_view term) const;

  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  std::vector<std::pair<std::string, std::string>> sorted_pairs() const;

 private:
  StringMap<std::string> map_;
};

// Disjoint equivalence classes of terms. Groups sharing a member merge at
// load; members are passed through normalize+stem so expansion operates
// over stems.
class SynonymMap {
 public:
  SynonymMap() = default;

  // One group per line, members separated by commas.
  static SynonymMap from_file(const std::filesystem::path& path,
                              const Normalizer& normalizer,
                              const StemDictionary& stems);
  static SynonymMap from_groups(const std::vector<std::vector<std::string>>& groups,
                                const Normalizer& normalizer,
                                const StemDictionary& stems);

  // Sorted members of the term's class (the term included), or nullptr.
  const std::vector<std::string>* group_of(std::string_view term) const;

  std::size_t group_count() const { return groups_.size(); }
  bool empty() const { return groups_.empty(); }

  // Each group sorted, groups ordered by first member.
  const std::vector<std::vector<std::string>>& groups() const { return groups_; }

 private:
  std::vector<std::vector<std::string>> groups_;
  StringMap<std::size_t> term_to_group_;
};

}  // namespace siltir
