#include "siltir/resources.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "siltir/errors.hpp"
#include "siltir/utf8.hpp"

namespace siltir {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (static_cast<unsigned char>(s[b]) <= 0x20)) ++b;
  while (e > b && (static_cast<unsigned char>(s[e - 1]) <= 0x20)) --e;
  return std::string(s.substr(b, e - b));
}

// Yields (line_number, trimmed line) for content lines; skips blanks and
// '#' comments. Throws ResourceError if the file cannot be opened.
std::vector<std::pair<std::size_t, std::string>> read_content_lines(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ResourceError("cannot open resource file: " + path.string());
  }
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    lines.emplace_back(lineno, std::move(t));
  }
  return lines;
}

[[noreturn]] void line_error(const std::filesystem::path& path, std::size_t lineno,
                             const std::string& what) {
  throw ResourceError(path.string() + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

FoldTable FoldTable::defaults() {
  std::vector<std::pair<char32_t, char32_t>> pairs;
  struct Family {
    char32_t from;
    char32_t to;
  };
  // ሐ-series and ኀ-series → ሀ-series; ሠ → ሰ; ዐ → አ; ፀ → ጸ.
  static constexpr Family kFamilies[] = {
      {0x1210, 0x1200},
      {0x1280, 0x1200},
      {0x1220, 0x1230},
      {0x12D0, 0x12A0},
      {0x1340, 0x1338},
  };
  for (const auto& fam : kFamilies) {
    for (char32_t order = 0; order < 7; ++order) {
      pairs.emplace_back(fam.from + order, fam.to + order);
    }
  }
  return from_pairs(pairs);
}

FoldTable FoldTable::from_pairs(
    const std::vector<std::pair<char32_t, char32_t>>& pairs) {
  FoldTable table;
  for (const auto& [from, to] : pairs) {
    auto [it, inserted] = table.map_.emplace(from, to);
    if (!inserted && it->second != to) {
      throw ResourceError("fold table maps " + utf8::encode(from) +
                          " to two different characters");
    }
  }
  // Targets must fold to themselves, otherwise folding is not idempotent.
  for (const auto& [from, to] : table.map_) {
    auto it = table.map_.find(to);
    if (it != table.map_.end() && it->second != to) {
      throw ResourceError("fold table chains " + utf8::encode(from) + " -> " +
                          utf8::encode(to) + " -> " + utf8::encode(it->second));
    }
  }
  return table;
}

FoldTable FoldTable::from_file(const std::filesystem::path& path) {
  std::vector<std::pair<char32_t, char32_t>> pairs;
  for (const auto& [lineno, line] : read_content_lines(path)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      line_error(path, lineno, "expected fromChar<TAB>toChar");
    }
    std::string from_s = trim(line.substr(0, tab));
    std::string to_s = trim(line.substr(tab + 1));
    auto from_cps = utf8::decode(from_s);
    auto to_cps = utf8::decode(to_s);
    if (from_cps.size() != 1 || to_cps.size() != 1) {
      line_error(path, lineno, "each side must be exactly one character");
    }
    pairs.emplace_back(from_cps[0].value, to_cps[0].value);
  }
  try {
    return from_pairs(pairs);
  } catch (const ResourceError& e) {
    throw ResourceError(path.string() + ": " + e.what());
  }
}

char32_t FoldTable::fold(char32_t cp) const {
  auto it = map_.find(cp);
  return it == map_.end() ? cp : it->second;
}

std::string FoldTable::fold(std::string_view term) const {
  std::string out;
  out.reserve(term.size());
  for (const auto& cp : utf8::decode(term)) {
    utf8::append(out, fold(cp.value));
  }
  return out;
}

std::string Normalizer::apply(std::string_view term) const {
  if (!fold_) return std::string(term);
  return table_.fold(term);
}

StopwordList StopwordList::from_terms(const std::vector<std::string>& terms,
                                      const Normalizer& normalizer) {
  StopwordList list;
  for (const auto& term : terms) {
    std::string t = trim(term);
    if (t.empty()) continue;
    list.entries_.insert(normalizer.apply(t));
  }
  return list;
}

StopwordList StopwordList::from_file(const std::filesystem::path& path,
                                     const Normalizer& normalizer) {
  StopwordList list;
  for (const auto& [lineno, line] : read_content_lines(path)) {
    list.entries_.insert(normalizer.apply(line));
  }
  return list;
}

bool StopwordList::contains(std::string_view term) const {
  return entries_.find(term) != entries_.end();
}

StemDictionary StemDictionary::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const Normalizer& normalizer) {
  StemDictionary dict;
  for (const auto& [surface, stem] : pairs) {
    std::string key = normalizer.apply(trim(surface));
    std::string value = normalizer.apply(trim(stem));
    if (key.empty() || value.empty()) {
      throw ResourceError("stem dictionary entry with empty surface or stem");
    }
    auto [it, inserted] = dict.map_.emplace(std::move(key), std::move(value));
    if (!inserted) {
      throw ResourceError("duplicate stem dictionary surface key: " + it->first);
    }
  }
  // Every stem value must itself stem to itself.
  for (const auto& [key, value] : dict.map_) {
    auto it = dict.map_.find(value);
    if (it != dict.map_.end() && it->second != value) {
      throw ResourceError("stem dictionary value is not a fixed point: " + key +
                          " -> " + value + " -> " + it->second);
    }
  }
  return dict;
}

StemDictionary StemDictionary::from_file(const std::filesystem::path& path,
                                         const Normalizer& normalizer) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [lineno, line] : read_content_lines(path)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      line_error(path, lineno, "expected surface<TAB>stem");
    }
    pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  try {
    return from_pairs(pairs, normalizer);
  } catch (const ResourceError& e) {
    throw ResourceError(path.string() + ": " + e.what());
  }
}

std::string StemDictionary::stem(std::string_view term) const {
  auto it = map_.find(term);
  return it == map_.end() ? std::string(term) : it->second;
}

const std::string* StemDictionary::lookup(std::string_view term) const {
  auto it = map_.find(term);
  return it == map_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, std::string>> StemDictionary::sorted_pairs() const {
  std::vector<std::pair<std::string, std::string>> out(map_.begin(), map_.end());
  std::sort(out.begin(), out.end());
  return out;
}

SynonymMap SynonymMap::from_groups(
    const std::vector<std::vector<std::string>>& groups,
    const Normalizer& normalizer, const StemDictionary& stems) {
  // Union-find over terms: overlapping input groups merge into one class.
  std::vector<std::set<std::string>> classes;
  StringMap<std::size_t> owner;
  for (const auto& group : groups) {
    std::vector<std::string> members;
    for (const auto& raw : group) {
      std::string t = trim(raw);
      if (t.empty()) continue;
      members.push_back(stems.stem(normalizer.apply(t)));
    }
    if (members.empty()) continue;
    std::size_t target = classes.size();
    for (const auto& m : members) {
      auto it = owner.find(m);
      if (it != owner.end()) {
        target = std::min(target, it->second);
      }
    }
    if (target == classes.size()) classes.emplace_back();
    for (const auto& m : members) {
      auto it = owner.find(m);
      if (it != owner.end() && it->second != target) {
        std::size_t from = it->second;
        for (const auto& moved : classes[from]) owner[moved] = target;
        classes[target].merge(classes[from]);
        classes[from].clear();
      }
      classes[target].insert(m);
      owner[m] = target;
    }
  }

  SynonymMap map;
  for (auto& cls : classes) {
    if (cls.empty()) continue;
    map.groups_.emplace_back(cls.begin(), cls.end());
  }
  std::sort(map.groups_.begin(), map.groups_.end());
  for (std::size_t g = 0; g < map.groups_.size(); ++g) {
    for (const auto& m : map.groups_[g]) {
      map.term_to_group_[m] = g;
    }
  }
  return map;
}

SynonymMap SynonymMap::from_file(const std::filesystem::path& path,
                                 const Normalizer& normalizer,
                                 const StemDictionary& stems) {
  std::vector<std::vector<std::string>> groups;
  for (const auto& [lineno, line] : read_content_lines(path)) {
    std::vector<std::string> members;
    std::size_t start = 0;
    while (start <= line.size()) {
      auto comma = line.find(',', start);
      if (comma == std::string::npos) comma = line.size();
      members.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    groups.push_back(std::move(members));
  }
  return from_groups(groups, normalizer, stems);
}

const std::vector<std::string>* SynonymMap::group_of(std::string_view term) const {
  auto it = term_to_group_.find(term);
  return it == term_to_group_.end() ? nullptr : &groups_[it->second];
}

}  // namespace siltir
