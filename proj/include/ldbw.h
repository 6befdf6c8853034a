#ifndef LDBW_H
#define LDBW_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define LDBW_API __attribute__((visibility("default")))
#else
#define LDBW_API
#endif

/* Matches the CLI exit codes. */
typedef enum {
  LDBW_OK = 0,
  LDBW_VERIFIED_NEGATIVE = 1,
  LDBW_HYPOTHESIS_VIOLATION = 2,
  LDBW_BUDGET_EXHAUSTED = 3,
  LDBW_INVALID_INPUT = 4
} ldbw_status;

typedef struct ldbw_graph ldbw_graph;
typedef struct ldbw_hgraph ldbw_hgraph; /* graph with bandwidth ordering and colouring */

LDBW_API const char* ldbw_status_name(ldbw_status s);
/* Message of the last failed call on this thread; empty when none. */
LDBW_API const char* ldbw_last_error(void);
/* Strings returned through char** out-parameters are owned by the caller. */
LDBW_API void ldbw_string_free(char* s);

/* Edge-list text or JSON ({"n", "edges"} or any object with a "graph" member). */
LDBW_API ldbw_status ldbw_graph_parse(const char* text, ldbw_graph** out);
LDBW_API ldbw_status ldbw_graph_from_edges(int n, const int* edges, size_t edge_count, ldbw_graph** out);
/* format: "json" or "edgelist". */
LDBW_API ldbw_status ldbw_graph_write(const ldbw_graph* g, const char* format, char** out);
LDBW_API int ldbw_graph_order(const ldbw_graph* g);
LDBW_API long long ldbw_graph_edge_count(const ldbw_graph* g);
LDBW_API int ldbw_graph_adjacent(const ldbw_graph* g, int u, int v);
LDBW_API void ldbw_graph_free(ldbw_graph* g);

/* {"graph", "order", "chi", "r"}; order and chi are optional (identity, greedy colouring). */
LDBW_API ldbw_status ldbw_hgraph_parse(const char* json, ldbw_hgraph** out);
LDBW_API ldbw_status ldbw_hgraph_write(const ldbw_hgraph* h, char** out);
LDBW_API int ldbw_hgraph_bandwidth(const ldbw_hgraph* h);
LDBW_API void ldbw_hgraph_free(ldbw_hgraph* h);

/* Instance JSON {"kind", "graph", "h"?, "structure"?}. */
LDBW_API ldbw_status ldbw_generate(const char* id, const char* params_json, uint64_t seed, char** out);

/* Reports are JSON objects; on failure they carry "status", "stage", "code", "detail". */

/* mode: "exact" or "sampled". */
LDBW_API ldbw_status ldbw_check_dense(const ldbw_graph* g, double rho, double d, const char* mode, int trials,
                                      uint64_t seed, char** report);
/* Superregularity is checked as well when delta > 0. */
LDBW_API ldbw_status ldbw_check_regular(const ldbw_graph* g, const int* a, size_t na, const int* b, size_t nb,
                                        double eps, double delta, const char* mode, uint64_t seed, char** report);
LDBW_API ldbw_status ldbw_find_power(const ldbw_graph* g, int r, int n_target, uint64_t seed, char** report);
/* targets_json: [[m_11, ..., m_1,2r], ...]. */
LDBW_API ldbw_status ldbw_assign_basic(const ldbw_hgraph* h, const char* targets_json, double beta, char** report);
/* {"h", "reduced", "n_v", "b", "framework": {...}, "special": {...}}. */
LDBW_API ldbw_status ldbw_assign_special(const char* request_json, char** report);
/* {"graph", "structure", "tau", "targets"?, "xi_n"}. */
LDBW_API ldbw_status ldbw_balance(const char* request_json, uint64_t seed, char** report);
/* options_json may be NULL; see README for keys. */
LDBW_API ldbw_status ldbw_embed(const ldbw_graph* g, const ldbw_hgraph* h, const char* options_json, uint64_t seed,
                                char** report);
/* Exact containment oracle: LDBW_VERIFIED_NEGATIVE certifies that H is not a subgraph of G. */
LDBW_API ldbw_status ldbw_oracle(const ldbw_graph* h, const ldbw_graph* g, long long budget, char** report);
/* Injective, total, edge preserving. */
LDBW_API ldbw_status ldbw_validate_embedding(const ldbw_graph* h, const ldbw_graph* g, const int* map, size_t n,
                                             char** report);

#ifdef __cplusplus
}
#endif

#endif
