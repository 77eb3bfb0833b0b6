// Copyright 2026 The CircuGraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CIRCUGRAPH_CIRCUGRAPH_H_
#define CIRCUGRAPH_CIRCUGRAPH_H_

#include <stddef.h>

#if defined(_WIN32)
#define CGR_API __declspec(dllexport)
#else
#define CGR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values are stable; new codes are only appended. */
typedef enum cgr_status {
  CGR_OK = 0,
  CGR_E_INVALID_ARGUMENT = 1,
  CGR_E_IO = 2,
  CGR_E_PARSE = 3,
  CGR_E_INVARIANT_VIOLATION = 4,
  CGR_E_DUPLICATE_DEFINITION = 5,
  CGR_E_INVALID_SPEC = 6,
  CGR_E_SYNTAX = 7,
  CGR_E_UNBOUND_VARIABLE = 8,
  CGR_E_TYPE_MISMATCH = 9,
  CGR_E_TRANSPORT = 10,
  CGR_E_PROTOCOL = 11,
  CGR_E_DECODE = 12,
  CGR_E_MISSING_BINDING = 13,
  CGR_E_KIND_MISMATCH = 14,
  CGR_E_EMPTY_INPUT = 15,
  CGR_E_EMPTY_INDEX = 16,
  CGR_E_NO_MATCH = 17,
  CGR_E_INCOMPATIBLE_OUTPUTS = 18,
  CGR_E_VARIABLE_CAPTURE = 19,
  CGR_E_INVALID_PLAN = 20,
  CGR_E_AUTH = 21,
  CGR_E_RATE_LIMITED = 22,
  CGR_E_SCRIPT_MISS = 23,
  CGR_E_SCHEMA_VIOLATION = 24,
  CGR_E_EMPTY_SEQUENCE = 25,
  CGR_E_EMPTY_ROUNDS = 26,
  CGR_E_CONFIG = 27,
  CGR_E_INTERNAL = 28
} cgr_status;

typedef struct cgr_graph cgr_graph;
typedef struct cgr_pipeline cgr_pipeline;

CGR_API const char* cgr_version(void);
/* "Ok", "InvalidArgument", ... */
CGR_API const char* cgr_status_name(cgr_status status);
/* Message of the last failed call on this thread; "" after a success. */
CGR_API const char* cgr_last_error(void);
/* Releases strings returned through char** out-parameters. NULL is fine. */
CGR_API void cgr_string_free(char* s);

/* --- graphs --------------------------------------------------------------
 * A graph is immutable once created and may be shared across threads. */

/* `source` is "fixture" or a path to an N-Triples (.nt) or fixture-format
 * file. The graph is validated while loading. */
CGR_API cgr_status cgr_graph_open(const char* source, cgr_graph** out);
/* `spec_json`: {"seed", "providers", "receivers", "resources", "coverage",
 * "gwp_min", "gwp_max"}; same spec gives the same graph. */
CGR_API cgr_status cgr_graph_generate(const char* spec_json, cgr_graph** out);
CGR_API void cgr_graph_free(cgr_graph* graph);

/* {"triples", "terms", "providers", "receivers", "resources"} */
CGR_API cgr_status cgr_graph_stats(const cgr_graph* graph, char** json_out);
/* `format` is "ntriples" or "fixture". */
CGR_API cgr_status cgr_graph_serialize(const cgr_graph* graph, const char* format, char** text_out);
/* Format from the extension: .nt writes N-Triples, anything else the
 * fixture format. */
CGR_API cgr_status cgr_graph_save(const cgr_graph* graph, const char* path);
/* Evaluates a query of the supported SPARQL subset; the result is
 * application/sparql-results+json. */
CGR_API cgr_status cgr_graph_sparql(const cgr_graph* graph, const char* query, char** json_out);
/* Writes provider.idx and receiver.idx into `directory` (created if
 * missing). */
CGR_API cgr_status cgr_graph_build_index(const cgr_graph* graph, const char* directory);

/* --- pipelines -----------------------------------------------------------
 * `options_json` (NULL means all defaults):
 *   {"index_dir": str,
 *    "endpoint": {"url": str, "token": str, "timeout_ms": int},
 *    "llm": {"backend": "none" | "mock" | "http",
 *            "script": bundled name or path to a mock script,
 *            "round": int,
 *            "base_url": str, "chat_path": str, "api_key": str,
 *            "model": str, "timeout_ms": int},
 *    "clock": "steady" | "tick"}
 * The pipeline keeps its own reference to the graph; `graph` may be freed
 * afterwards. `graph` may be NULL when only remote execution is used.
 * Answering is safe from several threads at once. */
CGR_API cgr_status cgr_pipeline_create(const cgr_graph* graph, const char* options_json, cgr_pipeline** out);
CGR_API void cgr_pipeline_free(cgr_pipeline* pipeline);

/* Answers one question. `config_json` holds pipeline config overrides
 * (NULL for defaults). The result is the one-line run-log record. */
CGR_API cgr_status cgr_pipeline_answer(const cgr_pipeline* pipeline, const char* question, const char* config_json,
                                       int include_wall_times, char** record_out);

/* --- evaluation ----------------------------------------------------------
 * `cases_path` NULL uses the bundled six cases. */

/* `modes_json`: [{"label": str, "config": {overrides}}, ...].
 * Result: {"tsv": str, "summary": str, "errors": int}. */
CGR_API cgr_status cgr_benchmark(const cgr_pipeline* pipeline, const char* cases_path, const char* modes_json,
                                 char** result_json);
/* Result: {"tsv": str, "rows": [{"mode", "correct": [0|1...], "accuracy"}]}. */
CGR_API cgr_status cgr_ablation(const cgr_pipeline* pipeline, const char* cases_path, const char* config_json,
                                char** result_json);
/* Builds one pipeline per round from `options_json` with llm.round set to
 * the round number. Result: {"tsv": str, "tm_exact_rate", "qm_exact_rate",
 * "answer_accuracy"}. */
CGR_API cgr_status cgr_consistency(const cgr_graph* graph, const char* options_json, const char* cases_path,
                                   const char* config_json, size_t rounds, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* CIRCUGRAPH_CIRCUGRAPH_H_ */
