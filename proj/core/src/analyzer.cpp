#include "siltir/analyzer.hpp"

#include <algorithm>
#include <cstdint>

#include "siltir/errors.hpp"
#include "siltir/string_map.hpp"
#include "siltir/utf8.hpp"

namespace siltir {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
}

std::string compute_fingerprint(const Normalizer& normalizer, bool stemming,
                                bool synonyms_enabled, const StopwordList& stopwords,
                                const StemDictionary& stems,
                                const SynonymMap& synonyms) {
  std::uint64_t h = kFnvOffset;
  std::string header = "v1|fold=";
  header += normalizer.folding() ? '1' : '0';
  header += "|stem=";
  header += stemming ? '1' : '0';
  header += "|syn=";
  header += synonyms_enabled ? '1' : '0';
  fnv_mix(h, header);
  fnv_mix(h, "|FT");
  for (const auto& [from, to] : normalizer.table().entries()) {
    fnv_mix(h, "|");
    fnv_mix(h, utf8::encode(from));
    fnv_mix(h, ">");
    fnv_mix(h, utf8::encode(to));
  }
  fnv_mix(h, "|SW");
  for (const auto& entry : stopwords.entries()) {
    fnv_mix(h, "|");
    fnv_mix(h, entry);
  }
  fnv_mix(h, "|SD");
  for (const auto& [surface, stem] : stems.sorted_pairs()) {
    fnv_mix(h, "|");
    fnv_mix(h, surface);
    fnv_mix(h, ">");
    fnv_mix(h, stem);
  }
  fnv_mix(h, "|SY");
  for (const auto& group : synonyms.groups()) {
    fnv_mix(h, "|");
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (i > 0) fnv_mix(h, ",");
      fnv_mix(h, group[i]);
    }
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace

Analyzer::Analyzer()
    : Analyzer(false, false, false, FoldTable{}, StopwordList{}, StemDictionary{},
               SynonymMap{}) {}

Analyzer::Analyzer(bool fold_homophones, bool enable_stemming, bool enable_synonyms,
                   FoldTable fold_table, StopwordList stopwords,
                   StemDictionary stems, SynonymMap synonyms)
    : normalizer_(std::move(fold_table), fold_homophones),
      enable_stemming_(enable_stemming),
      enable_synonyms_(enable_synonyms),
      stopwords_(std::move(stopwords)),
      stems_(std::move(stems)),
      synonyms_(std::move(synonyms)) {
  fingerprint_ = compute_fingerprint(normalizer_, enable_stemming_, enable_synonyms_,
                                     stopwords_, stems_, synonyms_);
}

Analyzer Analyzer::load(const AnalyzerOptions& options) {
  FoldTable table = options.fold_table_file.empty()
                        ? FoldTable::defaults()
                        : FoldTable::from_file(options.fold_table_file);
  Normalizer normalizer(table, options.fold_homophones);
  StopwordList stopwords;
  if (!options.stopword_file.empty()) {
    stopwords = StopwordList::from_file(options.stopword_file, normalizer);
  }
  StemDictionary stems;
  if (!options.stem_file.empty()) {
    stems = StemDictionary::from_file(options.stem_file, normalizer);
  }
  SynonymMap synonyms;
  if (!options.synonym_file.empty()) {
    synonyms = SynonymMap::from_file(options.synonym_file, normalizer, stems);
  }
  return Analyzer(options.fold_homophones, options.enable_stemming,
                  options.enable_synonyms, std::move(table), std::move(stopwords),
                  std::move(stems), std::move(synonyms));
}

std::vector<Token> Analyzer::tokenize(std::string_view text) {
  std::vector<Token> tokens;
  const auto cps = utf8::decode(text);
  std::uint32_t position = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && utf8::is_separator(cps[i].value)) ++i;
    if (i >= cps.size()) break;
    const std::size_t start = cps[i].offset;
    std::string term;
    while (i < cps.size() && !utf8::is_separator(cps[i].value)) {
      char32_t cp = cps[i].value;
      if (cp >= 'A' && cp <= 'Z') cp += 0x20;
      utf8::append(term, cp);
      ++i;
    }
    const std::size_t end =
        i < cps.size() ? cps[i].offset : cps.back().offset + cps.back().size;
    tokens.push_back(Token{std::move(term), position++, start, end, false});
  }
  return tokens;
}

std::vector<Token> Analyzer::fold_tokens(std::vector<Token> tokens,
                                         const Normalizer& normalizer) {
  if (!normalizer.folding()) return tokens;
  for (auto& token : tokens) {
    token.text = normalizer.apply(token.text);
  }
  return tokens;
}

std::vector<Token> Analyzer::remove_stopwords(std::vector<Token> tokens,
                                              const StopwordList& stopwords) {
  if (stopwords.empty()) return tokens;
  std::vector<Token> out;
  out.reserve(tokens.size());
  std::uint32_t position = 0;
  for (auto& token : tokens) {
    if (stopwords.contains(token.text)) continue;
    token.position = position++;
    out.push_back(std::move(token));
  }
  return out;
}

std::vector<Token> Analyzer::stem_tokens(std::vector<Token> tokens,
                                         const StemDictionary& stems) {
  if (stems.empty()) return tokens;
  for (auto& token : tokens) {
    if (const std::string* stem = stems.lookup(token.text)) {
      token.text = *stem;
    }
  }
  return tokens;
}

std::vector<Token> Analyzer::expand_synonyms(std::vector<Token> tokens,
                                             const SynonymMap& synonyms) {
  if (synonyms.empty()) return tokens;
  std::vector<Token> out;
  out.reserve(tokens.size());
  std::size_t i = 0;
  while (i < tokens.size()) {
    // One position group at a time: originals first, then injections not
    // already present at this position.
    const std::uint32_t position = tokens[i].position;
    std::size_t j = i;
    StringSet seen;
    while (j < tokens.size() && tokens[j].position == position) {
      seen.insert(tokens[j].text);
      out.push_back(tokens[j]);
      ++j;
    }
    for (std::size_t k = i; k < j; ++k) {
      const std::vector<std::string>* group = synonyms.group_of(tokens[k].text);
      if (group == nullptr) continue;
      for (const auto& member : *group) {
        if (seen.contains(member)) continue;
        seen.insert(member);
        out.push_back(Token{member, position, tokens[k].offset_start,
                            tokens[k].offset_end, true});
      }
    }
    i = j;
  }
  return out;
}

Token Analyzer::normalize(Token token) const {
  token.text = normalizer_.apply(token.text);
  return token;
}

Token Analyzer::stem(Token token) const {
  token.text = stems_.stem(token.text);
  return token;
}

std::vector<Token> Analyzer::analyze(std::string_view text,
                                     bool at_query_time) const {
  std::vector<Token> tokens = tokenize(text);
  tokens = fold_tokens(std::move(tokens), normalizer_);
  tokens = remove_stopwords(std::move(tokens), stopwords_);
  if (enable_stemming_) {
    tokens = stem_tokens(std::move(tokens), stems_);
  }
  if (enable_synonyms_ && !at_query_time) {
    tokens = expand_synonyms(std::move(tokens), synonyms_);
  }
  return tokens;
}

std::vector<std::string> Analyzer::analyze_terms(std::string_view text,
                                                 bool at_query_time) const {
  std::vector<Token> tokens = analyze(text, at_query_time);
  std::vector<std::string> terms;
  terms.reserve(tokens.size());
  for (auto& token : tokens) {
    terms.push_back(std::move(token.text));
  }
  return terms;
}

}  // namespace siltir
