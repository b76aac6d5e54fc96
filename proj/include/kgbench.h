/*
 * kgbench C API: schema-grounded NL-to-SPARQL benchmark construction over
 * an embedded RDF slice.
 *
 * Conventions:
 *   - opaque handles (kgb_graph, kgb_result) owned by the caller and
 *     released with the matching *_free function;
 *   - every fallible call returns a kgb_status; KGB_OK is 0;
 *   - kgb_last_error() returns a thread-local message for the most recent
 *     failing call on this thread;
 *   - strings returned through char** are heap-allocated; release them
 *     with kgb_string_free.
 */
#ifndef KGBENCH_H
#define KGBENCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kgb_status {
  KGB_OK = 0,
  KGB_ERROR = 1,          /* generic failure (parse errors, bad arguments) */
  KGB_CONFIG_ERROR = 2,
  KGB_PROVIDER_ERROR = 3,
  KGB_BALANCE_ERROR = 4,
  KGB_IO_ERROR = 5
} kgb_status;

typedef struct kgb_graph kgb_graph;
typedef struct kgb_result kgb_result;

const char* kgb_version(void);
const char* kgb_last_error(void);
void kgb_string_free(char* s);

/* ---- graph store ---- */

/* Loads line-oriented N-Triples; malformed lines are skipped and counted. */
kgb_status kgb_graph_load(const char* path, kgb_graph** out);
kgb_status kgb_graph_load_bytes(const char* data, size_t len, kgb_graph** out);
uint64_t kgb_graph_triple_count(const kgb_graph* g);
uint64_t kgb_graph_rejected_lines(const kgb_graph* g);
/* Serialized N-Triples, sorted by subject for reproducible diffs. */
kgb_status kgb_graph_to_ntriples(const kgb_graph* g, char** out);
kgb_status kgb_graph_save(const kgb_graph* g, const char* path);
void kgb_graph_free(kgb_graph* g);

/* Extracts the fixed-schema company slice. shuffle_seed < 0 keeps the
 * deterministic first-N subject order; >= 0 shuffles with that seed. */
kgb_status kgb_slice(const kgb_graph* source, uint64_t max_companies, int64_t shuffle_seed,
                     kgb_graph** out);

/* ---- query engine ---- */

/* Parses and evaluates one query. timeout_ms == 0 disables the deadline. */
kgb_status kgb_query(const kgb_graph* g, const char* query_text, uint64_t timeout_ms,
                     kgb_result** out);
int kgb_result_is_boolean(const kgb_result* r);
int kgb_result_boolean(const kgb_result* r);
uint64_t kgb_result_row_count(const kgb_result* r);
uint64_t kgb_result_column_count(const kgb_result* r);
/* Header row of variable names, then N-Triples-formatted terms. */
kgb_status kgb_result_to_tsv(const kgb_result* r, char** out);
void kgb_result_free(kgb_result* r);

/* ---- pipeline runs ---- */

typedef struct kgb_run_options {
  const char* config_path; /* required: YAML run configuration */
  const char* run_name;    /* required */
  const char* out_root;    /* default "artifacts/runs" when NULL */
  int phase;               /* 0 = phases 1-3, otherwise a single phase */
  const char* from_dir;    /* resume: seed banks + prior records */
  const char* const* overrides; /* "key=value" entries applied last */
  size_t n_overrides;
} kgb_run_options;

/* Runs the pipeline and returns the created run directory. */
kgb_status kgb_run_pipeline(const kgb_run_options* options, char** run_dir_out);

/* Recomputes the tables/ and figures_data/ CSVs for an existing run. */
kgb_status kgb_analyze(const char* run_dir);

/* Converts a records file (.jsonl or .csv) to "csv" or "jsonl". */
kgb_status kgb_export(const char* records_path, const char* format, const char* out_path);

/* Applies an edits file (accept/reject/replace by record id) to one
 * phase's records. output_dir NULL edits the run directory in place;
 * otherwise the run directory is copied and edited there. */
kgb_status kgb_review(const char* run_dir, int phase, const char* edits_path,
                      const char* config_path, const char* output_dir);

#ifdef __cplusplus
}
#endif

#endif /* KGBENCH_H */
