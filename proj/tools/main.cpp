// siltir: BM25 full-text search for Ethiopic-script text.
//
// Subcommands: index (build an index from a corpus), search (one-shot or
// interactive), analyze (show the pipeline stages for a text), eval (batch
// retrieval evaluation against qrels).
//
// Exit codes: 0 success, 2 usage/input error, 3 internal or I/O error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "siltir/analyzer.hpp"
#include "siltir/errors.hpp"
#include "siltir/eval.hpp"
#include "siltir/index.hpp"
#include "siltir/search.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct EngineConfig {
  fs::path stopwords;
  fs::path stem_dict;
  fs::path synonyms;
  fs::path fold_table;
  bool fold_homophones = true;
  bool enable_stemming = true;
  bool enable_synonyms = true;
  double k1 = 1.2;
  double b = 0.75;
  std::size_t k = 10;
  // Only meaningful in a --compare config: evaluate the candidate against
  // its own index (defaults to the primary index directory).
  std::optional<fs::path> index_dir;
};

fs::path resolve_relative(const fs::path& base_dir, const fs::path& p) {
  if (p.empty() || p.is_absolute()) return p;
  return base_dir / p;
}

EngineConfig load_config_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw siltir::ResourceError("cannot open config file: " + path.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw siltir::ResourceError("config file " + path.string() + ": " + e.what());
  }
  EngineConfig config;
  const fs::path base = path.parent_path();
  try {
    if (j.contains("stopwords"))
      config.stopwords = resolve_relative(base, j.at("stopwords").get<std::string>());
    if (j.contains("stem_dict"))
      config.stem_dict = resolve_relative(base, j.at("stem_dict").get<std::string>());
    if (j.contains("synonyms"))
      config.synonyms = resolve_relative(base, j.at("synonyms").get<std::string>());
    if (j.contains("fold_table"))
      config.fold_table = resolve_relative(base, j.at("fold_table").get<std::string>());
    if (j.contains("fold_homophones"))
      config.fold_homophones = j.at("fold_homophones").get<bool>();
    if (j.contains("enable_stemming"))
      config.enable_stemming = j.at("enable_stemming").get<bool>();
    if (j.contains("enable_synonyms"))
      config.enable_synonyms = j.at("enable_synonyms").get<bool>();
    if (j.contains("k1")) config.k1 = j.at("k1").get<double>();
    if (j.contains("b")) config.b = j.at("b").get<double>();
    if (j.contains("k")) config.k = j.at("k").get<std::size_t>();
    if (j.contains("index_dir"))
      config.index_dir = resolve_relative(base, j.at("index_dir").get<std::string>());
  } catch (const json::exception& e) {
    throw siltir::ResourceError("config file " + path.string() + ": " + e.what());
  }
  return config;
}

// Command-line values layered over an optional config file.
struct ConfigFlags {
  std::string config_file;
  std::string stopwords;
  std::string stem_dict;
  std::string synonyms;
  std::string fold_table;
  bool no_fold = false;
  bool no_stem = false;
  bool no_synonyms = false;
  double k1 = -1.0;          // <0 means "not set"
  double b = -1.0;
  std::size_t k = 0;         // 0 means "not set"

  void register_on(CLI::App* cmd) {
    cmd->add_option("--config", config_file, "JSON config file");
    cmd->add_option("--stopwords", stopwords, "stop-word list, one term per line");
    cmd->add_option("--stem-dict", stem_dict, "stem dictionary, surface<TAB>stem");
    cmd->add_option("--synonyms", synonyms, "synonym groups, comma-separated");
    cmd->add_option("--fold-table", fold_table,
                    "homophone fold table override, fromChar<TAB>toChar");
    cmd->add_flag("--no-fold", no_fold, "disable homophone folding");
    cmd->add_flag("--no-stem", no_stem, "disable stemming");
    cmd->add_flag("--no-synonyms", no_synonyms, "disable synonym expansion");
    cmd->add_option("--k1", k1, "BM25 k1 (default 1.2)");
    cmd->add_option("--b", b, "BM25 b (default 0.75)");
    cmd->add_option("--k", k, "result depth (default 10)");
  }

  EngineConfig merge() const {
    EngineConfig config;
    if (!config_file.empty()) config = load_config_file(config_file);
    if (!stopwords.empty()) config.stopwords = stopwords;
    if (!stem_dict.empty()) config.stem_dict = stem_dict;
    if (!synonyms.empty()) config.synonyms = synonyms;
    if (!fold_table.empty()) config.fold_table = fold_table;
    if (no_fold) config.fold_homophones = false;
    if (no_stem) config.enable_stemming = false;
    if (no_synonyms) config.enable_synonyms = false;
    if (k1 >= 0.0) config.k1 = k1;
    if (b >= 0.0) config.b = b;
    if (k > 0) config.k = k;
    if (config.k < 1) {
      throw siltir::ResourceError("result depth k must be >= 1");
    }
    return config;
  }
};

siltir::Analyzer build_analyzer(const EngineConfig& config) {
  siltir::AnalyzerOptions options;
  options.fold_homophones = config.fold_homophones;
  options.enable_stemming = config.enable_stemming;
  options.enable_synonyms = config.enable_synonyms;
  options.stopword_file = config.stopwords;
  options.stem_file = config.stem_dict;
  options.synonym_file = config.synonyms;
  options.fold_table_file = config.fold_table;
  return siltir::Analyzer::load(options);
}

siltir::BM25Params bm25_params(const EngineConfig& config) {
  siltir::BM25Params params{config.k1, config.b};
  params.validate();
  return params;
}

// --- corpus ingestion ---

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw siltir::ResourceError("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

std::vector<siltir::Document> load_corpus(const fs::path& corpus) {
  std::vector<siltir::Document> docs;
  if (fs::is_directory(corpus)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(corpus)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
      docs.push_back(siltir::Document{file.stem().string(), "", read_file(file)});
    }
    return docs;
  }
  if (fs::is_regular_file(corpus) && corpus.extension() == ".jsonl") {
    std::ifstream in(corpus, std::ios::binary);
    if (!in) throw siltir::ResourceError("cannot read corpus: " + corpus.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      json record;
      try {
        record = json::parse(line);
      } catch (const json::exception& e) {
        throw siltir::ResourceError(corpus.string() + ":" + std::to_string(lineno) +
                                    ": invalid JSON: " + e.what());
      }
      if (!record.contains("id") || !record.at("id").is_string()) {
        throw siltir::ResourceError(corpus.string() + ":" + std::to_string(lineno) +
                                    ": record missing string `id`");
      }
      if (!record.contains("body") || !record.at("body").is_string()) {
        throw siltir::ResourceError(corpus.string() + ":" + std::to_string(lineno) +
                                    ": record missing string `body`");
      }
      siltir::Document doc;
      doc.doc_id = record.at("id").get<std::string>();
      doc.body = record.at("body").get<std::string>();
      if (record.contains("title") && record.at("title").is_string()) {
        doc.title = record.at("title").get<std::string>();
      }
      docs.push_back(std::move(doc));
    }
    return docs;
  }
  throw siltir::ResourceError(
      "corpus must be a directory of .txt files or a .jsonl file: " +
      corpus.string());
}

// --- subcommands ---

int cmd_index(const std::string& corpus, const std::string& index_dir,
              const ConfigFlags& flags) {
  const EngineConfig config = flags.merge();
  const siltir::Analyzer analyzer = build_analyzer(config);
  const std::vector<siltir::Document> docs = load_corpus(corpus);
  if (docs.empty()) {
    std::cerr << "warning: corpus is empty, committing an empty index\n";
  }
  auto writer = siltir::IndexWriter::open(index_dir, analyzer);
  for (const auto& doc : docs) {
    writer.add_document(doc);
  }
  writer.commit();

  const auto reader = siltir::IndexReader::open(index_dir);
  std::cout << "documents: " << reader.doc_count() << '\n'
            << "vocabulary: " << reader.vocabulary_size() << '\n'
            << "avgdl: " << std::fixed << std::setprecision(6)
            << reader.stats().avgdl << '\n';
  return kExitOk;
}

void print_hits(const siltir::SearchResult& result) {
  std::cout << std::fixed << std::setprecision(6);
  std::size_t rank = 1;
  for (const auto& hit : result.hits) {
    std::cout << rank++ << ' ' << hit.doc_id << ' ' << hit.score << '\n';
  }
  if (result.empty_query) {
    std::cout << "empty query\n";
  } else {
    std::cout << result.hits.size() << " results\n";
  }
}

int cmd_search(const std::string& index_dir, const std::string& query_text,
               bool interactive, const ConfigFlags& flags) {
  const EngineConfig config = flags.merge();
  const siltir::Analyzer analyzer = build_analyzer(config);
  const auto reader = siltir::IndexReader::open(index_dir);
  if (reader.analyzer_fingerprint() != analyzer.fingerprint()) {
    throw siltir::AnalyzerMismatchError(
        "analyzer fingerprint " + analyzer.fingerprint() +
        " does not match index fingerprint " + reader.analyzer_fingerprint());
  }
  const siltir::BM25Params params = bm25_params(config);

  if (!interactive) {
    print_hits(siltir::search(reader, siltir::make_query(analyzer, query_text),
                              config.k, params));
    return kExitOk;
  }

  std::string line;
  while (std::cerr << "query> " << std::flush, std::getline(std::cin, line)) {
    if (line.empty()) continue;
    print_hits(
        siltir::search(reader, siltir::make_query(analyzer, line), config.k, params));
  }
  std::cerr << '\n';
  return kExitOk;
}

void print_stage(const char* name, const std::vector<siltir::Token>& tokens) {
  std::cout << name << ':';
  for (const auto& token : tokens) {
    std::cout << ' ' << token.text;
  }
  std::cout << '\n';
}

int cmd_analyze(const std::string& text, bool at_query_time,
                const ConfigFlags& flags) {
  const EngineConfig config = flags.merge();
  const siltir::Analyzer analyzer = build_analyzer(config);

  std::vector<siltir::Token> tokens = siltir::Analyzer::tokenize(text);
  print_stage("tokenize", tokens);
  tokens = siltir::Analyzer::fold_tokens(std::move(tokens), analyzer.normalizer());
  print_stage("normalize", tokens);
  tokens = siltir::Analyzer::remove_stopwords(std::move(tokens), analyzer.stopwords());
  print_stage("stopwords", tokens);
  if (analyzer.stemming_enabled()) {
    tokens = siltir::Analyzer::stem_tokens(std::move(tokens),
                                           analyzer.stem_dictionary());
  }
  print_stage("stem", tokens);
  if (analyzer.synonyms_enabled() && !at_query_time) {
    tokens = siltir::Analyzer::expand_synonyms(std::move(tokens),
                                               analyzer.synonyms());
  }
  print_stage("synonyms", tokens);
  return kExitOk;
}

std::vector<std::pair<std::string, std::string>> load_queries(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw siltir::EvalError("cannot open queries file: " + path.string());
  std::vector<std::pair<std::string, std::string>> queries;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw siltir::EvalError(path.string() + ":" + std::to_string(lineno) +
                              ": expected query_id<TAB>query text");
    }
    queries.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return queries;
}

siltir::RunResult run_queries(
    const std::vector<std::pair<std::string, std::string>>& queries,
    const siltir::IndexReader& reader, const siltir::Analyzer& analyzer,
    std::size_t k, const siltir::BM25Params& params) {
  siltir::RunResult run;
  for (const auto& [query_id, text] : queries) {
    auto result = siltir::search(reader, siltir::make_query(analyzer, text), k, params);
    run.set_ranking(query_id, std::move(result.hits));
  }
  return run;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw siltir::EvalError("cannot write: " + path.string());
  out << content;
}

int cmd_eval(const std::string& index_dir, const std::string& queries_path,
             const std::string& qrels_path, const std::string& output_dir,
             const std::string& compare_config, const ConfigFlags& flags) {
  const EngineConfig config = flags.merge();
  const siltir::Analyzer analyzer = build_analyzer(config);
  const auto reader = siltir::IndexReader::open(index_dir);
  if (reader.analyzer_fingerprint() != analyzer.fingerprint()) {
    throw siltir::AnalyzerMismatchError(
        "analyzer fingerprint " + analyzer.fingerprint() +
        " does not match index fingerprint " + reader.analyzer_fingerprint());
  }

  const auto queries = load_queries(queries_path);
  const siltir::Qrels qrels = siltir::Qrels::from_file(qrels_path);
  const fs::path out_dir = output_dir.empty() ? fs::path(".") : fs::path(output_dir);
  fs::create_directories(out_dir);

  const siltir::RunResult run =
      run_queries(queries, reader, analyzer, config.k, bm25_params(config));
  run.write_trec_file(out_dir / "run.trec", "siltir");

  siltir::EvalOptions options;
  options.cutoff = std::max<std::size_t>(config.k, 1);

  if (compare_config.empty()) {
    const siltir::EvalReport report = siltir::evaluate(run, qrels, options);
    write_text_file(out_dir / "report.txt", siltir::render_report(report));
    {
      std::ofstream csv(out_dir / "metrics.csv", std::ios::binary);
      siltir::write_metrics_csv(report, csv);
    }
    {
      std::ofstream csv(out_dir / "curve.csv", std::ios::binary);
      siltir::write_curve_csv(report, csv);
    }
    std::cout << siltir::render_report(report);
    return kExitOk;
  }

  EngineConfig candidate = load_config_file(compare_config);
  const siltir::Analyzer candidate_analyzer = build_analyzer(candidate);
  const fs::path candidate_index =
      candidate.index_dir ? *candidate.index_dir : fs::path(index_dir);
  const auto candidate_reader = siltir::IndexReader::open(candidate_index);
  if (candidate_reader.analyzer_fingerprint() != candidate_analyzer.fingerprint()) {
    throw siltir::AnalyzerMismatchError(
        "compare config fingerprint " + candidate_analyzer.fingerprint() +
        " does not match index fingerprint " +
        candidate_reader.analyzer_fingerprint());
  }
  const siltir::RunResult candidate_run =
      run_queries(queries, candidate_reader, candidate_analyzer, candidate.k,
                  bm25_params(candidate));
  candidate_run.write_trec_file(out_dir / "run_compare.trec", "siltir-compare");

  const siltir::ComparisonReport comparison =
      siltir::compare_runs(run, candidate_run, qrels, options);
  write_text_file(out_dir / "report.txt", siltir::render_comparison(comparison));
  {
    std::ofstream csv(out_dir / "metrics.csv", std::ios::binary);
    siltir::write_metrics_csv(comparison.baseline, csv);
  }
  {
    std::ofstream csv(out_dir / "metrics_compare.csv", std::ios::binary);
    siltir::write_metrics_csv(comparison.candidate, csv);
  }
  {
    std::ofstream csv(out_dir / "curve.csv", std::ios::binary);
    siltir::write_curve_csv(comparison.baseline, csv);
  }
  {
    std::ofstream csv(out_dir / "curve_compare.csv", std::ios::binary);
    siltir::write_curve_csv(comparison.candidate, csv);
  }
  std::cout << siltir::render_comparison(comparison);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BM25 full-text search engine for Ethiopic-script text"};
  app.require_subcommand(1);

  ConfigFlags index_flags, search_flags, analyze_flags, eval_flags;

  std::string corpus_path, index_dir, query_text, analyze_text;
  std::string queries_path, qrels_path, output_dir, compare_config;
  bool at_query_time = false;

  CLI::App* index_cmd =
      app.add_subcommand("index", "build an index from a corpus");
  index_cmd->add_option("corpus", corpus_path,
                        "directory of .txt files or a .jsonl file")
      ->required();
  index_cmd->add_option("index_dir", index_dir, "output index directory")
      ->required();
  index_flags.register_on(index_cmd);

  CLI::App* search_cmd = app.add_subcommand("search", "query an index");
  search_cmd->add_option("index_dir", index_dir, "index directory")->required();
  search_cmd->add_option("query", query_text,
                         "query text (omit for interactive mode)");
  search_flags.register_on(search_cmd);

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "show the pipeline stages for a text");
  analyze_cmd->add_option("text", analyze_text, "text to analyze")->required();
  analyze_cmd->add_flag("--query", at_query_time,
                        "analyze as a query (skips synonym expansion)");
  analyze_flags.register_on(analyze_cmd);

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "run queries and score them against qrels");
  eval_cmd->add_option("index_dir", index_dir, "index directory")->required();
  eval_cmd->add_option("queries", queries_path, "TSV: query_id<TAB>query text")
      ->required();
  eval_cmd->add_option("qrels", qrels_path,
                       "TREC qrels: query_id 0 doc_id relevance")
      ->required();
  eval_cmd->add_option("--output-dir", output_dir,
                       "where run/report/CSV files are written (default .)");
  eval_cmd->add_option("--compare", compare_config,
                       "second config JSON for a before/after report");
  eval_flags.register_on(eval_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (index_cmd->parsed()) {
      return cmd_index(corpus_path, index_dir, index_flags);
    }
    if (search_cmd->parsed()) {
      const bool interactive = search_cmd->count("query") == 0;
      return cmd_search(index_dir, query_text, interactive, search_flags);
    }
    if (analyze_cmd->parsed()) {
      return cmd_analyze(analyze_text, at_query_time, analyze_flags);
    }
    if (eval_cmd->parsed()) {
      return cmd_eval(index_dir, queries_path, qrels_path, output_dir,
                      compare_config, eval_flags);
    }
  } catch (const siltir::CommitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const siltir::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}
