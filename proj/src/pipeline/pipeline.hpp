#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "core/graph.hpp"
#include "core/schema.hpp"
#include "llm/provider.hpp"
#include "pipeline/config.hpp"
#include "pipeline/record.hpp"
#include "pipeline/template_spec.hpp"
#include "retrieval/embedding.hpp"
#include "retrieval/retrieval.hpp"

namespace kgbench::pipeline {

using policy::Category;

// Line-oriented, timestamped run log; a null path makes it a no-op sink.
class RunLogger {
 public:
  explicit RunLogger(std::string path = {});
  void log(const std::string& event);
  const std::vector<std::string>& warnings() const { return warnings_; }
  void warn(const std::string& event);

 private:
  std::string path_;
  std::vector<std::string> warnings_;
};

struct PhaseTally {
  int64_t candidates = 0;   // first candidates, including later-rejected ones
  int64_t first_valid = 0;  // first candidate parsed and executed
  int64_t repair_invocations = 0;
  int64_t accepted = 0;
  std::map<std::string, int64_t> rejected;  // terminal reason -> count
};

struct TemplateDiag {
  std::string template_id;
  uint64_t cycles = 0;      // reverse-query rounds consumed
  uint64_t candidates = 0;  // instantiation attempts
  uint64_t accepted = 0;
  bool aborted_by_stall = false;
};

struct Candidate {
  Category category = Category::Generic;
  std::string template_id;
  std::string question;
  std::string sparql_text;
  double llm_ms = 0;
  int64_t prompt_len = 0;
  std::vector<double> retrieval_scores;
  std::vector<std::string> retrieved_questions;
  uint64_t gen_request_index = 0;
  bool from_retrieval = false;
};

struct AcceptOutcome {
  bool accepted = false;
  std::string reject_reason;  // "duplicate" | "irreparable:<stage>"
  std::optional<BenchmarkRecord> record;
};

class Pipeline {
 public:
  Pipeline(const rdf::Graph& slice, const rdf::SchemaProfile& profile, RunConfig cfg,
           llm::ChatProvider& chat, retrieval::EmbeddingProvider& embedder, RunLogger& logger);

  void run_phase1();
  void run_phase2();  // requires a nonempty phase-1 pool
  void run_phase3();  // throws BalanceError when a category cannot reach target

  // building blocks, also exercised directly by tests
  std::vector<TemplateSpec> generate_templates(Category category, uint64_t n);
  std::vector<std::map<std::string, rdf::Term>> reverse_query_for_template(const TemplateSpec& tpl,
                                                                           std::string* error);
  std::optional<Candidate> instantiate(const TemplateSpec& tpl,
                                       const std::map<std::string, rdf::Term>& binding,
                                       std::string* skip_reason);
  AcceptOutcome validate_and_repair(Candidate candidate, int phase);

  // resumption: banks and prior records from an earlier run directory
  void adopt_prior(std::vector<BenchmarkRecord> prior_records, retrieval::SeedBank bank);

  const std::vector<BenchmarkRecord>& records() const { return records_; }
  const std::array<PhaseTally, 3>& tallies() const { return tallies_; }
  const std::vector<TemplateDiag>& template_diags() const { return template_diags_; }
  const retrieval::SeedBank& bank() const { return bank_; }
  const RunConfig& config() const { return cfg_; }

  void write_outputs(const std::string& run_dir, const std::string& run_id) const;

 private:
  struct StageFailure {
    std::string stage;  // parse | schema | enforce | exec | guard | duplicate
    std::string diagnostic;
  };
  struct TryResult {
    std::optional<BenchmarkRecord> record;  // set on success (id unassigned)
    std::optional<StageFailure> failure;
  };

  TryResult try_accept(const Candidate& candidate, int phase);
  llm::GenResult generate_with_retry(const llm::Prompt& prompt);
  void run_generation_phase(int phase, uint64_t per_category_target);
  void accept_record(BenchmarkRecord record, int phase);
  void insert_bank_seed(const BenchmarkRecord& record, int origin);

  const rdf::Graph& graph_;
  const rdf::SchemaProfile& profile_;
  RunConfig cfg_;
  llm::ChatProvider& chat_;
  retrieval::EmbeddingProvider& embedder_;
  RunLogger& log_;

  retrieval::SeedBank bank_;
  retrieval::DedupIndex dedup_;
  std::vector<BenchmarkRecord> records_;
  std::array<PhaseTally, 3> tallies_{};
  std::vector<TemplateDiag> template_diags_;
  int64_t next_id_ = 1;
};

// <name>-<UTC timestamp>[-k], created under out_root; never clobbers.
std::string create_run_dir(const std::string& out_root, const std::string& run_name);

struct RunOptions {
  std::string config_path;
  std::string run_name;
  std::string out_root = "artifacts/runs";
  int phase = 0;  // 0 = phases 1-3
  std::string from_dir;
  std::vector<std::string> overrides;
};

// Loads config + slice, wires providers, runs the requested phases, writes
// artifacts (including analysis tables) and returns the run directory.
std::string run_pipeline(const RunOptions& options);

}  // namespace kgbench::pipeline
