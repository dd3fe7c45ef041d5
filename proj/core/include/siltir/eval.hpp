#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "siltir/search.hpp"
#include "siltir/string_map.hpp"

namespace siltir {

// Binary relevance judgments, TREC qrels format:
//   query_id 0 doc_id relevance
// Queries judged with no relevant document are kept so reports can count
// them as excluded.
class Qrels {
 public:
  Qrels() = default;

  static Qrels from_file(const std::filesystem::path& path);

  void add(const std::string& query_id, const std::string& doc_id, bool relevant);

  // nullptr when the query was never judged.
  const std::set<std::string>* judged(std::string_view query_id) const;
  // Relevant set, or nullptr when the query is not evaluable.
  const std::set<std::string>* relevant_for(std::string_view query_id) const;

  std::size_t query_count() const { return relevant_.size(); }

 private:
  std::map<std::string, std::set<std::string>, std::less<>> relevant_;
  std::map<std::string, std::set<std::string>, std::less<>> judged_;
};

// One system output: per query, doc_ids ranked best-first with scores.
class RunResult {
 public:
  RunResult() = default;

  // TREC run format: query_id Q0 doc_id rank score tag
  static RunResult from_file(const std::filesystem::path& path);

  // Hits must arrive best-first; duplicate doc_ids within a query are an
  // error.
  void set_ranking(const std::string& query_id, std::vector<ScoredDoc> hits);

  const std::map<std::string, std::vector<ScoredDoc>, std::less<>>& rankings() const {
    return rankings_;
  }
  const std::vector<ScoredDoc>* ranking(std::string_view query_id) const;
  std::set<std::string> query_ids() const;

  void write_trec(std::ostream& out, std::string_view tag) const;
  void write_trec_file(const std::filesystem::path& path, std::string_view tag) const;

 private:
  std::map<std::string, std::vector<ScoredDoc>, std::less<>> rankings_;
};

// --- Set and ranking metrics (binary relevance) ---

// |retrieved ∩ relevant| / |retrieved|; 0 for an empty retrieved set.
double precision(const std::vector<std::string>& retrieved,
                 const std::set<std::string>& relevant);

// |retrieved ∩ relevant| / |relevant|; the relevant set must be non-empty.
double recall(const std::vector<std::string>& retrieved,
              const std::set<std::string>& relevant);

// Balanced F1: 2pr/(p+r), 0 when p+r = 0.
double f_measure(double p, double r);

// Mean over the relevant set of precision-at-rank at each relevant hit;
// relevant documents never retrieved contribute 0.
double average_precision(const std::vector<std::string>& ranking,
                         const std::set<std::string>& relevant);

inline constexpr std::size_t kRecallLevels = 11;  // 0.0, 0.1, ..., 1.0

// P_interp(r) = max precision over observed points with recall ≥ r, 0
// where no such point exists. Non-increasing across levels.
std::array<double, kRecallLevels> interpolated_pr_curve(
    const std::vector<std::string>& ranking, const std::set<std::string>& relevant);

struct EvalOptions {
  std::size_t cutoff = 1000;  // rankings are truncated to this depth
};

struct QueryEval {
  std::string query_id;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  double average_precision = 0.0;
  std::array<double, kRecallLevels> curve{};
  std::size_t retrieved = 0;
  std::size_t relevant = 0;
};

struct EvalReport {
  std::vector<QueryEval> per_query;  // ascending query_id
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_f_measure = 0.0;
  double mean_average_precision = 0.0;
  std::array<double, kRecallLevels> mean_curve{};
  std::vector<std::string> excluded_queries;  // judged-empty or unjudged
  std::size_t evaluated_count = 0;
};

// Evaluates every query present in the run; queries without a relevant
// set are excluded and reported. Throws EvalError when nothing is
// evaluable.
EvalReport evaluate(const RunResult& run, const Qrels& qrels,
                    const EvalOptions& options = {});

double mean_average_precision(const RunResult& run, const Qrels& qrels,
                              const EvalOptions& options = {});

struct ComparisonReport {
  EvalReport baseline;
  EvalReport candidate;
};

// Side-by-side evaluation of two runs over the same query set.
ComparisonReport compare_runs(const RunResult& run_a, const RunResult& run_b,
                              const Qrels& qrels, const EvalOptions& options = {});

// --- Report rendering ---

// Human-readable per-query and aggregate table.
std::string render_report(const EvalReport& report);
std::string render_comparison(const ComparisonReport& comparison);

// metric,query_id,value rows ("all" carries the aggregate means).
void write_metrics_csv(const EvalReport& report, std::ostream& out);
// recall_level,precision rows of the averaged curve.
void write_curve_csv(const EvalReport& report, std::ostream& out);

}  // namespace siltir
