#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "policy/policy.hpp"

namespace kgbench::pipeline {

// One accepted NL-SPARQL pair plus its per-record operational metrics.
// exec_ok implies parse_ok; empty implies exec_ok; for SELECT records
// answer_count == 0 iff empty.
struct BenchmarkRecord {
  int64_t id = 0;
  int phase = 1;
  policy::Category category = policy::Category::Generic;
  std::string template_id;
  std::string question;
  std::string sparql;  // canonical serialization
  bool parse_ok = false;
  bool exec_ok = false;
  bool empty = false;
  int64_t answer_count = 0;
  int64_t repair_attempts = 0;
  bool pre_repair_valid = true;
  double llm_ms = 0;
  double exec_ms = 0;
  int64_t prompt_len = 0;
  int64_t question_len = 0;
  std::vector<double> retrieval_scores;
  std::set<policy::StrategyTag> strategy_tags;
  std::vector<std::string> guard_violations;
  std::map<std::string, std::string> entities;  // slot variable -> IRI
  std::vector<std::string> rewrites;

  nlohmann::ordered_json to_json() const;
  static BenchmarkRecord from_json(const nlohmann::json& j);

  std::vector<std::string> csv_fields() const;
  static const std::vector<std::string>& csv_header();
  static BenchmarkRecord from_csv_fields(const std::vector<std::string>& fields);
};

std::string records_to_jsonl(const std::vector<BenchmarkRecord>& records);
std::vector<BenchmarkRecord> records_from_jsonl_file(const std::string& path);
void write_records_jsonl(const std::vector<BenchmarkRecord>& records, const std::string& path);
void write_records_csv(const std::vector<BenchmarkRecord>& records, const std::string& path);
std::vector<BenchmarkRecord> records_from_csv_file(const std::string& path);

}  // namespace kgbench::pipeline
