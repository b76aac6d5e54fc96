#include "pipeline/record.hpp"

#include <fstream>

#include "util/csv.hpp"
#include "util/errors.hpp"
#include "util/strings.hpp"

namespace kgbench::pipeline {

namespace {

// canonical tag order for serialization (Table-style order, not alphabetical)
std::vector<std::string> tags_to_list(const std::set<policy::StrategyTag>& tags) {
  std::vector<std::string> out;
  for (policy::StrategyTag tag : policy::kAllStrategyTags) {
    if (tags.count(tag)) out.push_back(policy::strategy_tag_text(tag));
  }
  return out;
}

std::set<policy::StrategyTag> tags_from_list(const std::vector<std::string>& list) {
  std::set<policy::StrategyTag> out;
  for (const std::string& text : list) {
    if (auto tag = policy::strategy_tag_from_text(text)) out.insert(*tag);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json BenchmarkRecord::to_json() const {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["phase"] = phase;
  j["category"] = policy::category_info(category).id;
  j["template_id"] = template_id;
  j["question"] = question;
  j["sparql"] = sparql;
  j["parse_ok"] = parse_ok;
  j["exec_ok"] = exec_ok;
  j["empty"] = empty;
  j["answer_count"] = answer_count;
  j["repair_attempts"] = repair_attempts;
  j["pre_repair_valid"] = pre_repair_valid;
  j["llm_ms"] = llm_ms;
  j["exec_ms"] = exec_ms;
  j["prompt_len"] = prompt_len;
  j["question_len"] = question_len;
  j["retrieval_scores"] = retrieval_scores;
  j["strategy_tags"] = tags_to_list(strategy_tags);
  j["guard_violations"] = guard_violations;
  j["entities"] = entities;
  j["rewrites"] = rewrites;
  return j;
}

BenchmarkRecord BenchmarkRecord::from_json(const nlohmann::json& j) {
  BenchmarkRecord r;
  r.id = j.at("id").get<int64_t>();
  r.phase = j.at("phase").get<int>();
  auto cat = policy::category_from_id(j.at("category").get<std::string>());
  if (!cat) throw IoError("record carries unknown category: " + j.at("category").get<std::string>());
  r.category = *cat;
  r.template_id = j.value("template_id", std::string{});
  r.question = j.at("question").get<std::string>();
  r.sparql = j.at("sparql").get<std::string>();
  r.parse_ok = j.at("parse_ok").get<bool>();
  r.exec_ok = j.at("exec_ok").get<bool>();
  r.empty = j.at("empty").get<bool>();
  r.answer_count = j.value("answer_count", int64_t{0});
  r.repair_attempts = j.value("repair_attempts", int64_t{0});
  r.pre_repair_valid = j.value("pre_repair_valid", true);
  r.llm_ms = j.value("llm_ms", 0.0);
  r.exec_ms = j.value("exec_ms", 0.0);
  r.prompt_len = j.value("prompt_len", int64_t{0});
  r.question_len = j.value("question_len", int64_t{0});
  r.retrieval_scores = j.value("retrieval_scores", std::vector<double>{});
  r.strategy_tags = tags_from_list(j.value("strategy_tags", std::vector<std::string>{}));
  r.guard_violations = j.value("guard_violations", std::vector<std::string>{});
  r.entities = j.value("entities", std::map<std::string, std::string>{});
  r.rewrites = j.value("rewrites", std::vector<std::string>{});
  return r;
}

const std::vector<std::string>& BenchmarkRecord::csv_header() {
  static const std::vector<std::string> header = {
      "id", "phase", "category", "template_id", "question", "sparql", "parse_ok", "exec_ok",
      "empty", "answer_count", "repair_attempts", "pre_repair_valid", "llm_ms", "exec_ms",
      "prompt_len", "question_len", "retrieval_scores", "strategy_tags", "guard_violations",
      "entities", "rewrites"};
  return header;
}

std::vector<std::string> BenchmarkRecord::csv_fields() const {
  auto jarr = [](const auto& value) { return nlohmann::json(value).dump(); };
  return {
      std::to_string(id),
      std::to_string(phase),
      policy::category_info(category).id,
      template_id,
      question,
      sparql,
      parse_ok ? "true" : "false",
      exec_ok ? "true" : "false",
      empty ? "true" : "false",
      std::to_string(answer_count),
      std::to_string(repair_attempts),
      pre_repair_valid ? "true" : "false",
      util::format_double(llm_ms),
      util::format_double(exec_ms),
      std::to_string(prompt_len),
      std::to_string(question_len),
      jarr(retrieval_scores),
      jarr(tags_to_list(strategy_tags)),
      jarr(guard_violations),
      jarr(entities),
      jarr(rewrites),
  };
}

BenchmarkRecord BenchmarkRecord::from_csv_fields(const std::vector<std::string>& fields) {
  if (fields.size() != csv_header().size()) {
    throw IoError("record CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                  std::to_string(csv_header().size()));
  }
  BenchmarkRecord r;
  size_t i = 0;
  r.id = std::stoll(fields[i++]);
  r.phase = std::stoi(fields[i++]);
  auto cat = policy::category_from_id(fields[i++]);
  if (!cat) throw IoError("record CSV row carries unknown category");
  r.category = *cat;
  r.template_id = fields[i++];
  r.question = fields[i++];
  r.sparql = fields[i++];
  r.parse_ok = fields[i++] == "true";
  r.exec_ok = fields[i++] == "true";
  r.empty = fields[i++] == "true";
  r.answer_count = std::stoll(fields[i++]);
  r.repair_attempts = std::stoll(fields[i++]);
  r.pre_repair_valid = fields[i++] == "true";
  r.llm_ms = std::stod(fields[i++]);
  r.exec_ms = std::stod(fields[i++]);
  r.prompt_len = std::stoll(fields[i++]);
  r.question_len = std::stoll(fields[i++]);
  r.retrieval_scores = nlohmann::json::parse(fields[i++]).get<std::vector<double>>();
  r.strategy_tags = tags_from_list(nlohmann::json::parse(fields[i++]).get<std::vector<std::string>>());
  r.guard_violations = nlohmann::json::parse(fields[i++]).get<std::vector<std::string>>();
  r.entities = nlohmann::json::parse(fields[i++]).get<std::map<std::string, std::string>>();
  r.rewrites = nlohmann::json::parse(fields[i++]).get<std::vector<std::string>>();
  return r;
}

std::string records_to_jsonl(const std::vector<BenchmarkRecord>& records) {
  std::string out;
  for (const BenchmarkRecord& r : records) {
    out += r.to_json().dump();
    out += "\n";
  }
  return out;
}

std::vector<BenchmarkRecord> records_from_jsonl_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open records file: " + path);
  std::vector<BenchmarkRecord> records;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    try {
      records.push_back(BenchmarkRecord::from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return records;
}

void write_records_jsonl(const std::vector<BenchmarkRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write records file: " + path);
  out << records_to_jsonl(records);
  if (!out) throw IoError("write failed: " + path);
}

void write_records_csv(const std::vector<BenchmarkRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write records file: " + path);
  out << util::csv_row(BenchmarkRecord::csv_header());
  for (const BenchmarkRecord& r : records) out << util::csv_row(r.csv_fields());
  if (!out) throw IoError("write failed: " + path);
}

std::vector<BenchmarkRecord> records_from_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open records file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto rows = util::csv_parse(text);
  std::vector<BenchmarkRecord> records;
  for (size_t i = 1; i < rows.size(); ++i) {  // skip header
    records.push_back(BenchmarkRecord::from_csv_fields(rows[i]));
  }
  return records;
}

}  // namespace kgbench::pipeline
