#include "pipeline/review.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <set>

#include "json.hpp"
#include "pipeline/config.hpp"
#include "pipeline/record.hpp"
#include "retrieval/embedding.hpp"
#include "retrieval/retrieval.hpp"
#include "util/errors.hpp"
#include "util/strings.hpp"

namespace kgbench::pipeline {

namespace fs = std::filesystem;

namespace {

struct Edit {
  std::string action;
  int64_t id = 0;
  nlohmann::json record;
};

std::vector<Edit> load_edits(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open edits file: " + path);
  std::vector<Edit> edits;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IoError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    Edit edit;
    edit.action = j.value("action", "");
    if (edit.action != "accept" && edit.action != "reject" && edit.action != "replace") {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown action '" + edit.action +
                        "'");
    }
    if (!j.contains("id")) throw ConfigError(path + ":" + std::to_string(line_no) + ": missing id");
    edit.id = j["id"].get<int64_t>();
    if (edit.action == "replace") {
      if (!j.contains("record")) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": replace needs a record");
      }
      edit.record = j["record"];
    }
    edits.push_back(std::move(edit));
  }
  return edits;
}

}  // namespace

void apply_review(const std::string& run_dir, int phase, const std::string& edits_path,
                  const std::string& config_path, const std::string& output_dir) {
  if (phase < 1 || phase > 3) throw ConfigError("review phase must be 1, 2 or 3");
  if (!fs::exists(run_dir)) throw IoError("run directory does not exist: " + run_dir);

  fs::path target(run_dir);
  if (!output_dir.empty()) {
    target = output_dir;
    fs::create_directories(target);
    fs::copy(run_dir, target,
             fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  }

  const fs::path phase_jsonl = target / ("phase" + std::to_string(phase) + ".jsonl");
  if (!fs::exists(phase_jsonl)) {
    throw IoError("run has no phase " + std::to_string(phase) + " records: " + phase_jsonl.string());
  }
  auto records = records_from_jsonl_file(phase_jsonl.string());

  std::set<int64_t> reject_ids;
  std::map<int64_t, BenchmarkRecord> replacements;
  for (const Edit& edit : load_edits(edits_path)) {
    if (edit.action == "reject") {
      reject_ids.insert(edit.id);
    } else if (edit.action == "replace") {
      BenchmarkRecord replacement = BenchmarkRecord::from_json(edit.record);
      replacement.id = edit.id;
      replacement.phase = phase;
      replacements[edit.id] = std::move(replacement);
    }
    // "accept" records the reviewer's sign-off; the record stays as-is
  }

  std::vector<BenchmarkRecord> edited;
  std::map<int64_t, const BenchmarkRecord*> by_id;
  for (BenchmarkRecord& r : records) {
    if (reject_ids.count(r.id)) continue;
    auto it = replacements.find(r.id);
    edited.push_back(it == replacements.end() ? r : it->second);
  }
  for (const BenchmarkRecord& r : edited) by_id[r.id] = &r;

  write_records_jsonl(edited, phase_jsonl.string());
  write_records_csv(edited, (target / ("phase" + std::to_string(phase) + ".csv")).string());

  // pipeline_records.jsonl = concatenation of the surviving phase files
  std::vector<BenchmarkRecord> all;
  for (int p = 1; p <= 3; ++p) {
    fs::path pj = target / ("phase" + std::to_string(p) + ".jsonl");
    if (!fs::exists(pj)) continue;
    auto batch = records_from_jsonl_file(pj.string());
    all.insert(all.end(), batch.begin(), batch.end());
  }
  write_records_jsonl(all, (target / "pipeline_records.jsonl").string());

  // Seed banks mirror phases 1-2; keep stored embeddings where the
  // question is unchanged, re-embed replacements.
  if (phase <= 2) {
    double threshold = 0.99;
    std::unique_ptr<retrieval::EmbeddingProvider> provider;
    if (!config_path.empty()) {
      RunConfig cfg = RunConfig::load(config_path, {});
      threshold = cfg.dedup_threshold;
      if (cfg.embedding.kind == "http") {
        provider = std::make_unique<retrieval::HttpEmbeddingProvider>(
            cfg.embedding.endpoint, cfg.embedding.model, cfg.embedding.dim, cfg.embedding.timeout);
      } else {
        provider = std::make_unique<retrieval::MockEmbeddingProvider>(cfg.embedding.dim);
      }
    } else {
      provider = std::make_unique<retrieval::MockEmbeddingProvider>(64);
    }

    const fs::path bank_dir = target / "seed_banks";
    auto old_bank = retrieval::SeedBank::load_jsonl_dir(bank_dir.string(), threshold);
    retrieval::SeedBank rebuilt(threshold);
    for (const policy::CategoryInfo& info : policy::category_registry()) {
      for (const retrieval::SeedExample& seed : old_bank.entries(info.category)) {
        auto it = by_id.find(seed.record_id);
        if (seed.phase_of_origin == phase && it == by_id.end()) continue;  // rejected
        if (seed.phase_of_origin == phase && it->second->question != seed.question) {
          retrieval::SeedExample replaced = seed;
          replaced.question = it->second->question;
          replaced.sparql = it->second->sparql;
          auto embedded = provider->embed(replaced.question);
          if (!embedded.ok()) {
            throw ProviderError("re-embedding replaced question failed: " + *embedded.error,
                                embedded.retriable);
          }
          replaced.embedding = std::move(embedded.vec);
          rebuilt.insert(std::move(replaced));
        } else {
          rebuilt.insert(seed);
        }
      }
    }
    rebuilt.save_jsonl_dir(bank_dir.string());
  }
}

}  // namespace kgbench::pipeline
