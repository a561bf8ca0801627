#ifndef TPKIT_H
#define TPKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum TpkitStatus {
  TPKIT_STATUS_OK = 0,
  TPKIT_STATUS_NULL_POINTER = 1,
  TPKIT_STATUS_INVALID_UTF8 = 2,
  TPKIT_STATUS_PARSE = 3,
  TPKIT_STATUS_BOUNDS = 4,
  TPKIT_STATUS_SHAPE = 5,
  TPKIT_STATUS_DIVISOR_ZERO = 6,
  TPKIT_STATUS_ARGUMENT = 7,
  TPKIT_STATUS_CANDIDATE_EXHAUSTED = 8,
  TPKIT_STATUS_CERTIFICATION = 9,
  TPKIT_STATUS_INTERNAL = 10,
  TPKIT_STATUS_PANIC = 11,
} TpkitStatus;

/**
 * A bipartite graph.
 */
typedef struct TpkitGraph TpkitGraph;

/**
 * A partial matrix over the rationals.
 */
typedef struct TpkitMatrix TpkitMatrix;

/**
 * The outcome of a check.
 */
typedef struct TpkitReport TpkitReport;

/**
 * Work counters of a check.
 */
typedef struct TpkitCounters {
  uint64_t minors_evaluated;
  uint64_t subproblems;
  uint64_t subproblems_raw;
  uint64_t arithmetic_ops;
} TpkitCounters;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library on the same thread.
 */
const char *tpkit_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *tpkit_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void tpkit_string_free(char *s);

/**
 * Parses the matrix text format (`?` marks an unspecified cell).
 *
 * # Safety
 * `text` is a NUL-terminated string; `out` is valid for a write.
 */
enum TpkitStatus tpkit_matrix_parse(const char *text, struct TpkitMatrix **out);

/**
 * # Safety
 * `matrix` is null or a live handle from this library.
 */
void tpkit_matrix_free(struct TpkitMatrix *matrix);

/**
 * Row count, or 0 for a null handle.
 *
 * # Safety
 * `matrix` is null or a live handle.
 */
size_t tpkit_matrix_rows(const struct TpkitMatrix *matrix);

/**
 * Column count, or 0 for a null handle.
 *
 * # Safety
 * `matrix` is null or a live handle.
 */
size_t tpkit_matrix_cols(const struct TpkitMatrix *matrix);

/**
 * The matrix in text format, or null on a null handle. Free with
 * [`tpkit_string_free`].
 *
 * # Safety
 * `matrix` is null or a live handle.
 */
char *tpkit_matrix_to_string(const struct TpkitMatrix *matrix);

/**
 * Checks `matrix` for `property` (`tp`, `tn`, `ssr`, `wsr`) with `method`
 * (`auto`, `dodgson`, `brute`, `recursive`, `biclique`; null means
 * `auto`). `signature` is `+,-,...` and may be null for `tp` and `tn`.
 *
 * # Safety
 * `matrix` is a live handle, string arguments are null or NUL-terminated,
 * and `out` is valid for a write.
 */
enum TpkitStatus tpkit_check(const struct TpkitMatrix *matrix,
                             const char *property,
                             const char *signature,
                             const char *method,
                             struct TpkitReport **out);

/**
 * # Safety
 * `report` is null or a live handle.
 */
void tpkit_report_free(struct TpkitReport *report);

/**
 * True if the property holds; false for a failed check or a null handle.
 *
 * # Safety
 * `report` is null or a live handle.
 */
bool tpkit_report_passed(const struct TpkitReport *report);

/**
 * Order of the witness minor, or 0 if the check passed.
 *
 * # Safety
 * `report` is null or a live handle.
 */
size_t tpkit_report_witness_order(const struct TpkitReport *report);

/**
 * # Safety
 * `report` is a live handle and `out` is valid for a write.
 */
enum TpkitStatus tpkit_report_counters(const struct TpkitReport *report, struct TpkitCounters *out);

/**
 * The report as JSON: `verdict`, `witness` (exact values as strings, or
 * null) and `counters`. Free with [`tpkit_string_free`].
 *
 * # Safety
 * `report` is a live handle and `out` is valid for a write.
 */
enum TpkitStatus tpkit_report_to_json(const struct TpkitReport *report, char **out);

/**
 * A strictly sign-regular `rows`×`cols` matrix; a null `signature` means
 * all `+`.
 *
 * # Safety
 * `signature` is null or NUL-terminated; `out` is valid for a write.
 */
enum TpkitStatus tpkit_generate_ssr(size_t rows,
                                    size_t cols,
                                    const char *signature,
                                    struct TpkitMatrix **out);

/**
 * Parses the graph text format: `m n`, then one `u v` edge per line.
 *
 * # Safety
 * `text` is NUL-terminated; `out` is valid for a write.
 */
enum TpkitStatus tpkit_graph_parse(const char *text, struct TpkitGraph **out);

/**
 * # Safety
 * `graph` is null or a live handle.
 */
void tpkit_graph_free(struct TpkitGraph *graph);

/**
 * Whether `graph` has `k` left and `k` right vertices that are all joined.
 *
 * # Safety
 * `graph` is a live handle and `out` is valid for a write.
 */
enum TpkitStatus tpkit_has_balanced_biclique(const struct TpkitGraph *graph, size_t k, bool *out);

/**
 * Builds and verifies the balanced-biclique gadget for `graph`, writing
 * its JSON description to `out`. A null `signature` means all `+`.
 *
 * # Safety
 * `graph` is a live handle, `signature` is null or NUL-terminated, and
 * `out` is valid for a write.
 */
enum TpkitStatus tpkit_gadget(const struct TpkitGraph *graph,
                              size_t k,
                              const char *signature,
                              bool strict,
                              char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TPKIT_H */
