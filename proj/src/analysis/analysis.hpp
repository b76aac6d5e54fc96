#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pipeline/record.hpp"
#include "policy/policy.hpp"

namespace kgbench::analysis {

using pipeline::BenchmarkRecord;
using policy::Category;
using policy::StrategyTag;

struct PhaseStats {
  int phase = 0;
  int64_t total = 0;
  int64_t parse_ok = 0;
  int64_t exec_ok = 0;
  int64_t empty = 0;  // parse_ok && exec_ok && zero rows (ASK false included)
  double avg_llm_ms = 0;
  double avg_exec_ms = 0;
};

struct CategoryStats {
  Category category = Category::Generic;
  int64_t n = 0;
  double avg_triples = 0;
  double avg_filters = 0;
  double agg_pct = 0;                    // share using COUNT and/or ORDER BY
  std::optional<double> empty_pct;       // over executed records; absent when none ran
  char profile_type = 'S';
};

struct StrategyStats {
  StrategyTag tag = StrategyTag::Join;
  int64_t n = 0;
  std::optional<double> exec_pct;  // nullopt renders as a dash (n == 0)
  std::optional<double> parse_pct;
  std::optional<double> empty_pct;
};

struct RepairStats {
  int phase = 0;
  std::optional<double> pre_repair_pct;  // over all generated candidates
  int64_t repairs = 0;
  std::optional<double> post_repair_pct;  // over accepted records
};

// Per-phase candidate tallies as recorded in summary.json.
struct PhaseCandidates {
  int64_t candidates = 0;
  int64_t first_valid = 0;
  int64_t repairs = 0;
};

std::vector<PhaseStats> phase_stats(const std::vector<BenchmarkRecord>& records);
std::vector<CategoryStats> category_stats(const std::vector<BenchmarkRecord>& records);
std::vector<StrategyStats> strategy_stats(const std::vector<BenchmarkRecord>& records);
std::vector<RepairStats> repair_stats(const std::vector<BenchmarkRecord>& records,
                                      const std::map<int, PhaseCandidates>& tallies);

// One decimal place, half-up; no denominator renders as "--".
std::string format_pct(std::optional<double> pct);
std::string format_avg(double value);

std::string phase_stats_csv(const std::vector<PhaseStats>& stats);
std::string category_stats_csv(const std::vector<CategoryStats>& stats);
std::string strategy_stats_csv(const std::vector<StrategyStats>& stats);
std::string repair_stats_csv(const std::vector<RepairStats>& stats);

// Figure data emitted as CSV (latency by category, answer-count
// distribution, retrieval-score distribution, strategy coverage matrix).
std::map<std::string, std::string> figure_data_csv(const std::vector<BenchmarkRecord>& records);

// Reads pipeline_records.jsonl (+ summary.json when present) from a run
// directory and writes tables/*.csv and figures_data/*.csv.
void analyze_run_dir(const std::string& run_dir);

// Format conversion for record files; format is "csv" or "jsonl".
void export_records(const std::string& records_path, const std::string& format,
                    const std::string& out_path);

}  // namespace kgbench::analysis
