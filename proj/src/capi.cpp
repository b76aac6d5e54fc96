#include "kgbench.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "analysis/analysis.hpp"
#include "core/ntriples.hpp"
#include "core/schema.hpp"
#include "pipeline/pipeline.hpp"
#include "pipeline/review.hpp"
#include "sparql/eval.hpp"
#include "sparql/parser.hpp"
#include "util/errors.hpp"

using namespace kgbench;

struct kgb_graph {
  rdf::Graph graph;
  uint64_t rejected_lines = 0;
};

struct kgb_result {
  sparql::ResultSet result;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps the core error taxonomy onto C status codes.
template <typename Fn>
kgb_status guarded(Fn&& fn) {
  try {
    fn();
    return KGB_OK;
  } catch (const ConfigError& e) {
    set_error(e.what());
    return KGB_CONFIG_ERROR;
  } catch (const ProviderError& e) {
    set_error(e.what());
    return KGB_PROVIDER_ERROR;
  } catch (const BalanceError& e) {
    set_error(e.what());
    return KGB_BALANCE_ERROR;
  } catch (const IoError& e) {
    set_error(e.what());
    return KGB_IO_ERROR;
  } catch (const std::exception& e) {
    set_error(e.what());
    return KGB_ERROR;
  }
}

}  // namespace

extern "C" {

const char* kgb_version(void) { return "0.1.0"; }

const char* kgb_last_error(void) { return g_last_error.c_str(); }

void kgb_string_free(char* s) { std::free(s); }

kgb_status kgb_graph_load(const char* path, kgb_graph** out) {
  if (!path || !out) {
    set_error("kgb_graph_load: null argument");
    return KGB_ERROR;
  }
  return guarded([&] {
    auto loaded = rdf::load_ntriples_file(path);
    auto* handle = new kgb_graph;
    handle->graph = std::move(loaded.graph);
    handle->rejected_lines = loaded.rejected.size();
    *out = handle;
  });
}

kgb_status kgb_graph_load_bytes(const char* data, size_t len, kgb_graph** out) {
  if (!data || !out) {
    set_error("kgb_graph_load_bytes: null argument");
    return KGB_ERROR;
  }
  return guarded([&] {
    auto loaded = rdf::load_ntriples_string(std::string_view(data, len));
    auto* handle = new kgb_graph;
    handle->graph = std::move(loaded.graph);
    handle->rejected_lines = loaded.rejected.size();
    *out = handle;
  });
}

uint64_t kgb_graph_triple_count(const kgb_graph* g) { return g ? g->graph.size() : 0; }

uint64_t kgb_graph_rejected_lines(const kgb_graph* g) { return g ? g->rejected_lines : 0; }

kgb_status kgb_graph_to_ntriples(const kgb_graph* g, char** out) {
  if (!g || !out) {
    set_error("kgb_graph_to_ntriples: null argument");
    return KGB_ERROR;
  }
  *out = dup_string(g->graph.to_ntriples());
  return KGB_OK;
}

kgb_status kgb_graph_save(const kgb_graph* g, const char* path) {
  if (!g || !path) {
    set_error("kgb_graph_save: null argument");
    return KGB_ERROR;
  }
  return guarded([&] { rdf::save_ntriples_file(g->graph, path); });
}

void kgb_graph_free(kgb_graph* g) { delete g; }

kgb_status kgb_slice(const kgb_graph* source, uint64_t max_companies, int64_t shuffle_seed,
                     kgb_graph** out) {
  if (!source || !out) {
    set_error("kgb_slice: null argument");
    return KGB_ERROR;
  }
  return guarded([&] {
    rdf::SliceOptions options;
    options.max_companies = max_companies;
    if (shuffle_seed >= 0) {
      options.order = rdf::SliceOrder::Shuffled;
      options.shuffle_seed = static_cast<uint64_t>(shuffle_seed);
    }
    auto* handle = new kgb_graph;
    handle->graph =
        rdf::extract_slice(source->graph, rdf::SchemaProfile::default_profile(), options);
    *out = handle;
  });
}

kgb_status kgb_query(const kgb_graph* g, const char* query_text, uint64_t timeout_ms,
                     kgb_result** out) {
  if (!g || !query_text || !out) {
    set_error("kgb_query: null argument");
    return KGB_ERROR;
  }
  auto parsed = sparql::parse_query(query_text);
  if (!parsed.ok()) {
    set_error(parsed.error->to_string());
    return KGB_ERROR;
  }
  auto outcome = sparql::evaluate(*parsed.ast, g->graph,
                                  std::chrono::milliseconds(static_cast<int64_t>(timeout_ms)));
  if (!outcome.ok()) {
    set_error(*outcome.error);
    return KGB_ERROR;
  }
  auto* handle = new kgb_result;
  handle->result = std::move(*outcome.result);
  *out = handle;
  return KGB_OK;
}

int kgb_result_is_boolean(const kgb_result* r) {
  return r && r->result.kind == sparql::ResultSet::Kind::Boolean ? 1 : 0;
}

int kgb_result_boolean(const kgb_result* r) { return r && r->result.boolean ? 1 : 0; }

uint64_t kgb_result_row_count(const kgb_result* r) { return r ? r->result.rows.size() : 0; }

uint64_t kgb_result_column_count(const kgb_result* r) { return r ? r->result.columns.size() : 0; }

kgb_status kgb_result_to_tsv(const kgb_result* r, char** out) {
  if (!r || !out) {
    set_error("kgb_result_to_tsv: null argument");
    return KGB_ERROR;
  }
  *out = dup_string(r->result.to_tsv());
  return KGB_OK;
}

void kgb_result_free(kgb_result* r) { delete r; }

kgb_status kgb_run_pipeline(const kgb_run_options* options, char** run_dir_out) {
  if (!options || !options->config_path || !options->run_name) {
    set_error("kgb_run_pipeline: config_path and run_name are required");
    return KGB_CONFIG_ERROR;
  }
  return guarded([&] {
    pipeline::RunOptions opts;
    opts.config_path = options->config_path;
    opts.run_name = options->run_name;
    if (options->out_root) opts.out_root = options->out_root;
    opts.phase = options->phase;
    if (options->from_dir) opts.from_dir = options->from_dir;
    for (size_t i = 0; i < options->n_overrides; ++i) {
      opts.overrides.emplace_back(options->overrides[i]);
    }
    const std::string run_dir = pipeline::run_pipeline(opts);
    if (run_dir_out) *run_dir_out = dup_string(run_dir);
  });
}

kgb_status kgb_analyze(const char* run_dir) {
  if (!run_dir) {
    set_error("kgb_analyze: null run_dir");
    return KGB_ERROR;
  }
  return guarded([&] { analysis::analyze_run_dir(run_dir); });
}

kgb_status kgb_export(const char* records_path, const char* format, const char* out_path) {
  if (!records_path || !format || !out_path) {
    set_error("kgb_export: null argument");
    return KGB_ERROR;
  }
  return guarded([&] { analysis::export_records(records_path, format, out_path); });
}

kgb_status kgb_review(const char* run_dir, int phase, const char* edits_path,
                      const char* config_path, const char* output_dir) {
  if (!run_dir || !edits_path) {
    set_error("kgb_review: run_dir and edits_path are required");
    return KGB_ERROR;
  }
  return guarded([&] {
    pipeline::apply_review(run_dir, phase, edits_path, config_path ? config_path : "",
                           output_dir ? output_dir : "");
  });
}

}  // extern "C"
