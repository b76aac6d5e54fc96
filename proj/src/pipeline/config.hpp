#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kgbench::pipeline {

struct ProviderConfig {
  std::string kind = "mock";  // mock | http
  std::string endpoint = "http://localhost:11434";
  std::string model;
  std::chrono::milliseconds timeout{60000};
  double fault_rate = 0.0;  // mock only
  size_t dim = 64;          // embedding only
};

// Keys mirror the YAML config one to one; environment variables win over
// the file (KGBENCH_<KEY>, plus bare SEED), CLI overrides win over both.
struct RunConfig {
  uint64_t templates_per_category = 5;
  uint64_t seeds_per_template = 8;
  uint64_t phase2_seeds_per_category = 20;
  uint64_t phase3_targets_per_category = 50;
  uint64_t reverse_row_cap = 25;
  uint64_t retrieval_k = 2;
  uint64_t result_cap = 5;
  double dedup_threshold = 0.99;
  std::chrono::milliseconds reverse_timeout{20000};
  uint64_t seed = 42;
  uint64_t stall_limit = 10;
  uint64_t repair_budget = 2;
  bool enforce_patterns = true;
  uint64_t parallelism = 1;
  bool paraphrase = false;  // hook only; the run path never rewrites
  bool review_gate = false;

  std::string slice_path;
  std::string embedding_cache;
  ProviderConfig chat;
  ProviderConfig embedding;

  void validate() const;  // throws ConfigError

  // Parse order: file, then environment, then overrides ("key=value").
  static RunConfig load(const std::string& yaml_path, const std::vector<std::string>& overrides);
  static RunConfig from_yaml_text(const std::string& text, const std::string& base_dir,
                                  const std::vector<std::string>& overrides);
};

}  // namespace kgbench::pipeline
