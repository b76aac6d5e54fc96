#pragma once

#include <string>

namespace kgbench::pipeline {

// Applies an offline review pass to one phase of a finished run.
// Edits file: JSONL, one {"action": accept|reject|replace, "id": N,
// "record": {...}} per line. With an empty output_dir the run directory
// is edited in place; otherwise it is copied there first. Phase JSONL/CSV,
// pipeline_records.jsonl and the seed banks are rewritten to match.
// config_path (optional) supplies the embedding provider used to re-embed
// replaced questions; the mock provider is used when it is empty.
void apply_review(const std::string& run_dir, int phase, const std::string& edits_path,
                  const std::string& config_path, const std::string& output_dir);

}  // namespace kgbench::pipeline
