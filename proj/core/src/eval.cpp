#include "siltir/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "siltir/errors.hpp"

namespace siltir {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

[[noreturn]] void line_error(const std::filesystem::path& path, std::size_t lineno,
                             const std::string& what) {
  throw EvalError(path.string() + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

Qrels Qrels::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EvalError("cannot open qrels file: " + path.string());
  Qrels qrels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != 4) {
      line_error(path, lineno, "expected: query_id 0 doc_id relevance");
    }
    int relevance = 0;
    try {
      relevance = std::stoi(fields[3]);
    } catch (const std::exception&) {
      line_error(path, lineno, "relevance is not an integer: " + fields[3]);
    }
    if (relevance < 0) {
      line_error(path, lineno, "negative relevance: " + fields[3]);
    }
    qrels.add(fields[0], fields[2], relevance > 0);
  }
  return qrels;
}

void Qrels::add(const std::string& query_id, const std::string& doc_id,
                bool relevant) {
  judged_[query_id].insert(doc_id);
  auto& rel = relevant_[query_id];
  if (relevant) rel.insert(doc_id);
}

const std::set<std::string>* Qrels::judged(std::string_view query_id) const {
  const auto it = judged_.find(query_id);
  return it == judged_.end() ? nullptr : &it->second;
}

const std::set<std::string>* Qrels::relevant_for(std::string_view query_id) const {
  const auto it = relevant_.find(query_id);
  if (it == relevant_.end() || it->second.empty()) return nullptr;
  return &it->second;
}

RunResult RunResult::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw EvalError("cannot open run file: " + path.string());

  struct Row {
    long rank;
    ScoredDoc hit;
  };
  std::map<std::string, std::vector<Row>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != 6) {
      line_error(path, lineno, "expected: query_id Q0 doc_id rank score tag");
    }
    Row row;
    try {
      row.rank = std::stol(fields[3]);
      row.hit.score = std::stod(fields[4]);
    } catch (const std::exception&) {
      line_error(path, lineno, "rank or score is not numeric");
    }
    row.hit.doc_id = fields[2];
    rows[fields[0]].push_back(std::move(row));
  }

  RunResult run;
  for (auto& [query_id, query_rows] : rows) {
    std::stable_sort(query_rows.begin(), query_rows.end(),
                     [](const Row& a, const Row& b) { return a.rank < b.rank; });
    std::vector<ScoredDoc> hits;
    hits.reserve(query_rows.size());
    for (auto& row : query_rows) hits.push_back(std::move(row.hit));
    run.set_ranking(query_id, std::move(hits));
  }
  return run;
}

void RunResult::set_ranking(const std::string& query_id,
                            std::vector<ScoredDoc> hits) {
  StringSet seen;
  for (const auto& hit : hits) {
    if (!seen.insert(hit.doc_id).second) {
      throw EvalError("duplicate doc_id '" + hit.doc_id + "' in ranking of query " +
                      query_id);
    }
  }
  rankings_[query_id] = std::move(hits);
}

const std::vector<ScoredDoc>* RunResult::ranking(std::string_view query_id) const {
  const auto it = rankings_.find(query_id);
  return it == rankings_.end() ? nullptr : &it->second;
}

std::set<std::string> RunResult::query_ids() const {
  std::set<std::string> ids;
  for (const auto& [query_id, hits] : rankings_) ids.insert(query_id);
  return ids;
}

void RunResult::write_trec(std::ostream& out, std::string_view tag) const {
  out << std::fixed << std::setprecision(6);
  for (const auto& [query_id, hits] : rankings_) {
    std::size_t rank = 1;
    for (const auto& hit : hits) {
      out << query_id << " Q0 " << hit.doc_id << ' ' << rank++ << ' ' << hit.score
          << ' ' << tag << '\n';
    }
  }
}

void RunResult::write_trec_file(const std::filesystem::path& path,
                                std::string_view tag) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw EvalError("cannot write run file: " + path.string());
  write_trec(out, tag);
}

double precision(const std::vector<std::string>& retrieved,
                 const std::set<std::string>& relevant) {
  if (retrieved.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& doc : retrieved) {
    if (relevant.contains(doc)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(retrieved.size());
}

double recall(const std::vector<std::string>& retrieved,
              const std::set<std::string>& relevant) {
  if (relevant.empty()) {
    throw EvalError("recall undefined: empty relevant set");
  }
  std::size_t hits = 0;
  for (const auto& doc : retrieved) {
    if (relevant.contains(doc)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(relevant.size());
}

double f_measure(double p, double r) {
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

double average_precision(const std::vector<std::string>& ranking,
                         const std::set<std::string>& relevant) {
  if (relevant.empty()) {
    throw EvalError("average precision undefined: empty relevant set");
  }
  double sum = 0.0;
  std::size_t rels_seen = 0;
  for (std::size_t rank = 1; rank <= ranking.size(); ++rank) {
    if (relevant.contains(ranking[rank - 1])) {
      ++rels_seen;
      sum += static_cast<double>(rels_seen) / static_cast<double>(rank);
    }
  }
  return sum / static_cast<double>(relevant.size());
}

std::array<double, kRecallLevels> interpolated_pr_curve(
    const std::vector<std::string>& ranking, const std::set<std::string>& relevant) {
  struct Point {
    double recall;
    double precision;
  };
  std::vector<Point> points;
  std::size_t rels_seen = 0;
  for (std::size_t rank = 1; rank <= ranking.size(); ++rank) {
    if (relevant.contains(ranking[rank - 1])) {
      ++rels_seen;
      points.push_back(Point{
          static_cast<double>(rels_seen) / static_cast<double>(relevant.size()),
          static_cast<double>(rels_seen) / static_cast<double>(rank)});
    }
  }
  std::array<double, kRecallLevels> curve{};
  // Walk points right-to-left carrying the running max precision.
  double best = 0.0;
  auto point = points.rbegin();
  for (std::size_t level = kRecallLevels; level-- > 0;) {
    const double r = static_cast<double>(level) / 10.0;
    while (point != points.rend() && point->recall >= r - 1e-12) {
      best = std::max(best, point->precision);
      ++point;
    }
    curve[level] = best;
  }
  return curve;
}

EvalReport evaluate(const RunResult& run, const Qrels& qrels,
                    const EvalOptions& options) {
  EvalReport report;
  std::array<double, kRecallLevels> curve_sum{};
  for (const auto& [query_id, hits] : run.rankings()) {
    const std::set<std::string>* relevant = qrels.relevant_for(query_id);
    if (relevant == nullptr) {
      report.excluded_queries.push_back(query_id);
      continue;
    }
    std::vector<std::string> ranking;
    ranking.reserve(std::min(hits.size(), options.cutoff));
    for (const auto& hit : hits) {
      if (ranking.size() >= options.cutoff) break;
      ranking.push_back(hit.doc_id);
    }
    QueryEval qe;
    qe.query_id = query_id;
    qe.precision = precision(ranking, *relevant);
    qe.recall = recall(ranking, *relevant);
    qe.f_measure = f_measure(qe.precision, qe.recall);
    qe.average_precision = average_precision(ranking, *relevant);
    qe.curve = interpolated_pr_curve(ranking, *relevant);
    qe.retrieved = ranking.size();
    qe.relevant = relevant->size();

    report.mean_precision += qe.precision;
    report.mean_recall += qe.recall;
    report.mean_f_measure += qe.f_measure;
    report.mean_average_precision += qe.average_precision;
    for (std::size_t i = 0; i < kRecallLevels; ++i) curve_sum[i] += qe.curve[i];
    report.per_query.push_back(std::move(qe));
  }
  if (report.per_query.empty()) {
    throw EvalError("no evaluable queries: every query lacks relevant judgments");
  }
  const auto n = static_cast<double>(report.per_query.size());
  report.evaluated_count = report.per_query.size();
  report.mean_precision /= n;
  report.mean_recall /= n;
  report.mean_f_measure /= n;
  report.mean_average_precision /= n;
  for (std::size_t i = 0; i < kRecallLevels; ++i) {
    report.mean_curve[i] = curve_sum[i] / n;
  }
  return report;
}

double mean_average_precision(const RunResult& run, const Qrels& qrels,
                              const EvalOptions& options) {
  return evaluate(run, qrels, options).mean_average_precision;
}

ComparisonReport compare_runs(const RunResult& run_a, const RunResult& run_b,
                              const Qrels& qrels, const EvalOptions& options) {
  if (run_a.query_ids() != run_b.query_ids()) {
    throw EvalError("comparison requires both runs to cover the same query set");
  }
  return ComparisonReport{evaluate(run_a, qrels, options),
                          evaluate(run_b, qrels, options)};
}

namespace {

void render_header(std::ostream& out, const EvalReport& report) {
  out << "queries evaluated: " << report.evaluated_count
      << ", excluded (no relevant judgments): " << report.excluded_queries.size();
  if (!report.excluded_queries.empty()) {
    out << " [";
    for (std::size_t i = 0; i < report.excluded_queries.size(); ++i) {
      if (i > 0) out << ", ";
      out << report.excluded_queries[i];
    }
    out << ']';
  }
  out << '\n';
}

}  // namespace

std::string render_report(const EvalReport& report) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  render_header(out, report);
  out << '\n';
  out << std::left << std::setw(12) << "query" << std::right << std::setw(10)
      << "precision" << std::setw(10) << "recall" << std::setw(10) << "f1"
      << std::setw(10) << "ap" << '\n';
  for (const auto& qe : report.per_query) {
    out << std::left << std::setw(12) << qe.query_id << std::right << std::setw(10)
        << qe.precision << std::setw(10) << qe.recall << std::setw(10)
        << qe.f_measure << std::setw(10) << qe.average_precision << '\n';
  }
  out << std::left << std::setw(12) << "mean" << std::right << std::setw(10)
      << report.mean_precision << std::setw(10) << report.mean_recall
      << std::setw(10) << report.mean_f_measure << std::setw(10)
      << report.mean_average_precision << '\n';
  out << "\ninterpolated precision at recall 0.0..1.0:\n";
  for (std::size_t i = 0; i < kRecallLevels; ++i) {
    out << "  " << std::setprecision(1) << static_cast<double>(i) / 10.0 << ": "
        << std::setprecision(4) << report.mean_curve[i] << '\n';
  }
  return std::move(out).str();
}

std::string render_comparison(const ComparisonReport& comparison) {
  const EvalReport& a = comparison.baseline;
  const EvalReport& b = comparison.candidate;
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "baseline:  ";
  render_header(out, a);
  out << "candidate: ";
  render_header(out, b);
  out << '\n';
  out << std::left << std::setw(10) << "metric" << std::right << std::setw(10)
      << "baseline" << std::setw(11) << "candidate" << std::setw(10) << "delta"
      << '\n';
  const auto row = [&out](const char* name, double va, double vb) {
    out << std::left << std::setw(10) << name << std::right << std::setw(10) << va
        << std::setw(11) << vb << std::setw(10) << std::showpos << vb - va
        << std::noshowpos << '\n';
  };
  row("precision", a.mean_precision, b.mean_precision);
  row("recall", a.mean_recall, b.mean_recall);
  row("f1", a.mean_f_measure, b.mean_f_measure);
  row("map", a.mean_average_precision, b.mean_average_precision);
  out << "\ninterpolated precision (recall: baseline candidate delta):\n";
  for (std::size_t i = 0; i < kRecallLevels; ++i) {
    out << "  " << std::setprecision(1) << static_cast<double>(i) / 10.0 << ": "
        << std::setprecision(4) << a.mean_curve[i] << ' ' << b.mean_curve[i] << ' '
        << std::showpos << b.mean_curve[i] - a.mean_curve[i] << std::noshowpos
        << '\n';
  }
  return std::move(out).str();
}

void write_metrics_csv(const EvalReport& report, std::ostream& out) {
  out << "metric,query_id,value\n";
  out << std::fixed << std::setprecision(6);
  for (const auto& qe : report.per_query) {
    out << "precision," << qe.query_id << ',' << qe.precision << '\n';
    out << "recall," << qe.query_id << ',' << qe.recall << '\n';
    out << "f_measure," << qe.query_id << ',' << qe.f_measure << '\n';
    out << "average_precision," << qe.query_id << ',' << qe.average_precision
        << '\n';
  }
  out << "mean_precision,all," << report.mean_precision << '\n';
  out << "mean_recall,all," << report.mean_recall << '\n';
  out << "mean_f_measure,all," << report.mean_f_measure << '\n';
  out << "mean_average_precision,all," << report.mean_average_precision << '\n';
}

void write_curve_csv(const EvalReport& report, std::ostream& out) {
  out << "recall_level,precision\n";
  out << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < kRecallLevels; ++i) {
    out << std::setprecision(1) << static_cast<double>(i) / 10.0 << ','
        << std::setprecision(6) << report.mean_curve[i] << '\n';
  }
}

}  // namespace siltir
