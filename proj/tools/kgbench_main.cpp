// kgbench command line: slice | run | analyze | export | review | query.
// Talks to the core exclusively through the C API in kgbench.h.
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgbench.h"

namespace {

int status_to_exit(kgb_status status) {
  switch (status) {
    case KGB_OK: return 0;
    case KGB_CONFIG_ERROR: return 2;
    case KGB_PROVIDER_ERROR: return 3;
    case KGB_BALANCE_ERROR: return 4;
    case KGB_IO_ERROR: return 5;
    default: return 1;
  }
}

const char* status_class(kgb_status status) {
  switch (status) {
    case KGB_OK: return "ok";
    case KGB_CONFIG_ERROR: return "config-error";
    case KGB_PROVIDER_ERROR: return "provider-error";
    case KGB_BALANCE_ERROR: return "balance-error";
    case KGB_IO_ERROR: return "io-error";
    default: return "error";
  }
}

int fail(kgb_status status) {
  std::cerr << "kgbench: " << status_class(status) << ": " << kgb_last_error() << "\n";
  return status_to_exit(status);
}

struct GraphHandle {
  kgb_graph* g = nullptr;
  ~GraphHandle() { kgb_graph_free(g); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kgbench: schema-grounded NL-to-SPARQL benchmark construction"};
  app.require_subcommand(1);

  // slice
  std::string slice_input, slice_output;
  uint64_t max_companies = 5000;
  int64_t shuffle_seed = -1;
  auto* slice_cmd = app.add_subcommand("slice", "Extract the fixed-schema company slice");
  slice_cmd->add_option("--input", slice_input, "Source N-Triples file")->required();
  slice_cmd->add_option("--output", slice_output, "Slice N-Triples file")->required();
  slice_cmd->add_option("--max-companies", max_companies, "Company cap (default 5000)");
  slice_cmd->add_option("--shuffle-seed", shuffle_seed,
                        "Shuffle qualifying companies with this seed (default: first-N)");

  // run
  std::string run_config, run_name, out_root = "artifacts/runs", from_dir;
  int phase = 0;
  std::vector<std::string> overrides;
  auto* run_cmd = app.add_subcommand("run", "Run pipeline phases 1-3");
  run_cmd->add_option("--config", run_config, "YAML run configuration")->required();
  run_cmd->add_option("--run-name", run_name, "Run name (directory prefix)")->required();
  run_cmd->add_option("--out-root", out_root, "Artifacts root (default artifacts/runs)");
  run_cmd->add_option("--phase", phase, "Run a single phase (1-3; default: all)");
  run_cmd->add_option("--from", from_dir, "Adopt seed banks and records from a prior run dir");
  run_cmd->add_option("--set", overrides, "Config override key=value (repeatable)");

  // analyze
  std::string analyze_dir;
  auto* analyze_cmd = app.add_subcommand("analyze", "Recompute tables and figure data for a run");
  analyze_cmd->add_option("run_dir", analyze_dir, "Run directory")->required();

  // export
  std::string export_records, export_format = "csv", export_output;
  auto* export_cmd = app.add_subcommand("export", "Convert a records file between jsonl and csv");
  export_cmd->add_option("--records", export_records, "Input records (.jsonl or .csv)")->required();
  export_cmd->add_option("--format", export_format, "Output format: csv | jsonl");
  export_cmd->add_option("--output", export_output, "Output path")->required();

  // review
  std::string review_dir, review_edits, review_config, review_output;
  int review_phase = 2;
  bool in_place = false;
  auto* review_cmd = app.add_subcommand("review", "Apply an edits file to a phase's records");
  review_cmd->add_option("--run-dir", review_dir, "Run directory")->required();
  review_cmd->add_option("--phase", review_phase, "Phase to edit (1-3)")->required();
  review_cmd->add_option("--edits", review_edits, "Edits JSONL file")->required();
  review_cmd->add_option("--config", review_config, "Run config (for re-embedding replacements)");
  review_cmd->add_option("--output", review_output, "Write the edited run here");
  review_cmd->add_flag("--in-place", in_place, "Edit the run directory itself");

  // query
  std::string query_slice, query_file;
  uint64_t timeout_ms = 20000;
  auto* query_cmd = app.add_subcommand("query", "Evaluate a SPARQL query against a slice");
  query_cmd->add_option("--slice", query_slice, "Slice N-Triples file")->required();
  query_cmd->add_option("--query-file", query_file, "Query file (default: stdin)");
  query_cmd->add_option("--timeout-ms", timeout_ms, "Execution deadline (default 20000)");

  CLI11_PARSE(app, argc, argv);

  if (slice_cmd->parsed()) {
    GraphHandle source;
    kgb_status status = kgb_graph_load(slice_input.c_str(), &source.g);
    if (status != KGB_OK) return fail(status);
    if (kgb_graph_rejected_lines(source.g) > 0) {
      std::cerr << "kgbench: " << kgb_graph_rejected_lines(source.g)
                << " malformed line(s) skipped\n";
    }
    GraphHandle slice;
    status = kgb_slice(source.g, max_companies, shuffle_seed, &slice.g);
    if (status != KGB_OK) return fail(status);
    status = kgb_graph_save(slice.g, slice_output.c_str());
    if (status != KGB_OK) return fail(status);
    std::cout << "slice: " << kgb_graph_triple_count(slice.g) << " triples -> " << slice_output
              << "\n";
    return 0;
  }

  if (run_cmd->parsed()) {
    std::vector<const char*> override_ptrs;
    override_ptrs.reserve(overrides.size());
    for (const std::string& o : overrides) override_ptrs.push_back(o.c_str());
    kgb_run_options options{};
    options.config_path = run_config.c_str();
    options.run_name = run_name.c_str();
    options.out_root = out_root.c_str();
    options.phase = phase;
    options.from_dir = from_dir.empty() ? nullptr : from_dir.c_str();
    options.overrides = override_ptrs.empty() ? nullptr : override_ptrs.data();
    options.n_overrides = override_ptrs.size();
    char* run_dir = nullptr;
    kgb_status status = kgb_run_pipeline(&options, &run_dir);
    if (status != KGB_OK) return fail(status);
    std::cout << run_dir << "\n";
    kgb_string_free(run_dir);
    return 0;
  }

  if (analyze_cmd->parsed()) {
    kgb_status status = kgb_analyze(analyze_dir.c_str());
    if (status != KGB_OK) return fail(status);
    std::cout << "analysis written under " << analyze_dir << "/tables and " << analyze_dir
              << "/figures_data\n";
    return 0;
  }

  if (export_cmd->parsed()) {
    kgb_status status =
        kgb_export(export_records.c_str(), export_format.c_str(), export_output.c_str());
    if (status != KGB_OK) return fail(status);
    std::cout << "exported " << export_output << "\n";
    return 0;
  }

  if (review_cmd->parsed()) {
    if (!in_place && review_output.empty()) {
      std::cerr << "kgbench: config-error: review needs --output DIR or --in-place\n";
      return 2;
    }
    kgb_status status = kgb_review(review_dir.c_str(), review_phase, review_edits.c_str(),
                                   review_config.empty() ? nullptr : review_config.c_str(),
                                   in_place ? nullptr : review_output.c_str());
    if (status != KGB_OK) return fail(status);
    std::cout << "review applied to " << (in_place ? review_dir : review_output) << "\n";
    return 0;
  }

  if (query_cmd->parsed()) {
    GraphHandle graph;
    kgb_status status = kgb_graph_load(query_slice.c_str(), &graph.g);
    if (status != KGB_OK) return fail(status);
    std::string query_text;
    if (query_file.empty()) {
      std::ostringstream buffer;
      buffer << std::cin.rdbuf();
      query_text = buffer.str();
    } else {
      FILE* f = std::fopen(query_file.c_str(), "rb");
      if (!f) {
        std::cerr << "kgbench: io-error: cannot open " << query_file << "\n";
        return 5;
      }
      char chunk[4096];
      size_t n;
      while ((n = std::fread(chunk, 1, sizeof(chunk), f)) > 0) query_text.append(chunk, n);
      std::fclose(f);
    }
    kgb_result* result = nullptr;
    status = kgb_query(graph.g, query_text.c_str(), timeout_ms, &result);
    if (status != KGB_OK) return fail(status);
    char* tsv = nullptr;
    kgb_result_to_tsv(result, &tsv);
    std::cout << tsv;
    kgb_string_free(tsv);
    kgb_result_free(result);
    return 0;
  }

  return 0;
}
