/* C interface to the wordgraph library.
 *
 * Every function returns a wg_status; on failure the thread-local
 * wg_last_error() / wg_last_error_json() describe what went wrong. Handles
 * are opaque and must be released with the matching free function. Strings
 * returned through char** are heap allocated and released with
 * wg_string_free().
 *
 * SPDX-FileCopyrightText: 2026 WordGraph contributors
 * SPDX-License-Identifier: Apache-2.0
 */

#ifndef WORDGRAPH_H
#define WORDGRAPH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WG_API __declspec(dllexport)
#else
#define WG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wg_status {
  WG_OK = 0,
  WG_ERR_INPUT = 1,
  WG_ERR_DATABASE = 2,
  WG_ERR_CONSTRAINT = 3,
  WG_ERR_NOT_FOUND = 4,
  WG_ERR_INTERNAL = 5
} wg_status;

typedef struct wg_database wg_database;

typedef struct wg_constants {
  uint64_t max_vertices;
  uint64_t max_leaves;
  uint32_t max_depth;
  double min_commonness;
  double max_commonness;
  uint64_t word_count;
  uint64_t m_edges;
  uint64_t w_edges;
} wg_constants;

typedef struct wg_word_stats {
  uint32_t polysemy;
  uint32_t depth;
  uint32_t subsumers;
  uint32_t subvertices;
  uint32_t leaves;
  double commonness;
} wg_word_stats;

typedef struct wg_pair_info {
  uint32_t lcs_offset;
  uint32_t lcs_depth;
  uint32_t distance;
} wg_pair_info;

WG_API const char *wg_version(void);
WG_API const char *wg_status_name(wg_status status);

/* Message of the last failure on this thread ("" when none). */
WG_API const char *wg_last_error(void);
/* {"code": ..., "message": ..., "details": [...]} for the last failure. */
WG_API const char *wg_last_error_json(void);

/* Loads data.noun / index.noun / noun.exc from a directory. With strict != 0
 * any deviation from the WordNet 3.1 constants fails with WG_ERR_DATABASE. */
WG_API wg_status wg_database_open(const char *dir, int strict, wg_database **out);
WG_API wg_status wg_database_open_cache(const char *path, int strict, wg_database **out);
WG_API wg_status wg_database_save_cache(const wg_database *db, const char *path);
WG_API void wg_database_free(wg_database *db);

WG_API wg_status wg_database_constants(const wg_database *db, wg_constants *out);
WG_API wg_status wg_set_threads(wg_database *db, unsigned threads);

/* Measure catalog: dense indices 0..wg_measure_count()-1. */
WG_API size_t wg_measure_count(void);
WG_API const char *wg_measure_name(size_t index);
WG_API wg_status wg_measure_lookup(const char *name, size_t *index);
WG_API int wg_measure_is_similarity(size_t index);
WG_API int wg_measure_normalized(size_t index);

WG_API wg_status wg_word_stats_get(const wg_database *db, const char *word, wg_word_stats *out);
WG_API wg_status wg_word_measure(const wg_database *db, const char *word, size_t measure, double *out);
WG_API wg_status wg_pair(const wg_database *db, const char *x, const char *y, wg_pair_info *out);
WG_API wg_status wg_similarity(const wg_database *db, const char *x, const char *y, size_t measure,
                               double *out);
/* Mean similarity over unordered pairs of the distinct nouns given. */
WG_API wg_status wg_average_similarity(const wg_database *db, const char *const *nouns, size_t count,
                                       size_t measure, double *out);

/* JSON operations: health, measures, verify, similarity, word_stats, ic,
 * analyze, suggest, correlate, session.create, session.get, session.propose,
 * session.decide. `request_json` may be NULL for operations without input. */
WG_API wg_status wg_request(wg_database *db, const char *op, const char *request_json, char **response_json);

/* Persists ideation sessions as JSON lines under `dir`, replaying existing
 * logs first. `restored` (may be NULL) receives the number of sessions
 * reloaded. */
WG_API wg_status wg_session_persist(wg_database *db, const char *dir, size_t *restored);

WG_API void wg_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif /* WORDGRAPH_H */
