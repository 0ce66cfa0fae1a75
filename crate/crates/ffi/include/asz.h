#ifndef ASZ_H
#define ASZ_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function. The first five values
 * match the `asz` command line exit codes.
 */
typedef enum AszStatus {
  ASZ_STATUS_OK = 0,
  ASZ_STATUS_INVALID_INSTANCE = 1,
  ASZ_STATUS_IO = 2,
  ASZ_STATUS_INTERNAL = 3,
  ASZ_STATUS_ORACLE_LIMIT = 4,
  ASZ_STATUS_NULL_POINTER = 5,
  ASZ_STATUS_INVALID_ARGUMENT = 6,
} AszStatus;

typedef enum AszStrategy {
  ASZ_STRATEGY_THM1 = 0,
  ASZ_STRATEGY_PROP2 = 1,
  ASZ_STRATEGY_GREEDY = 2,
  ASZ_STRATEGY_BITVECTOR = 3,
} AszStrategy;

typedef enum AszBoundKind {
  ASZ_BOUND_KIND_REC4 = 0,
  ASZ_BOUND_KIND_REC2 = 1,
} AszBoundKind;

/**
 * Result of [`asz_color`].
 */
typedef struct AszColoring AszColoring;

/**
 * A biclique partition instance under construction or ready for coloring.
 */
typedef struct AszPartition AszPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

const char *asz_version(void);

/**
 * Message for the last failed call on this thread, or NULL.
 */
const char *asz_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void asz_string_free(char *s);

/**
 * Creates an empty instance on `n` vertices.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AszStatus asz_partition_new(size_t n, struct AszPartition **out);

/**
 * Appends the biclique `a x b`. Validity is only checked by
 * [`asz_partition_validate`] and the algorithms.
 *
 * # Safety
 * `p` must be a live handle; `a`/`b` must point to `a_len`/`b_len` values.
 */
enum AszStatus asz_partition_add_biclique(struct AszPartition *p,
                                          const size_t *a,
                                          size_t a_len,
                                          const size_t *b,
                                          size_t b_len);

/**
 * Parses an instance from its JSON text.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum AszStatus asz_partition_from_json(const char *json, struct AszPartition **out);

/**
 * Serializes an instance to JSON; free the result with `asz_string_free`.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum AszStatus asz_partition_to_json(const struct AszPartition *p, char **out);

/**
 * # Safety
 * `p` must be NULL or a live handle.
 */
size_t asz_partition_vertex_count(const struct AszPartition *p);

/**
 * # Safety
 * `p` must be NULL or a live handle.
 */
size_t asz_partition_biclique_count(const struct AszPartition *p);

/**
 * Counts partition violations into `violations`; 0 means valid.
 *
 * # Safety
 * `p` must be a live handle and `violations` a valid pointer.
 */
enum AszStatus asz_partition_validate(const struct AszPartition *p, size_t *violations);

/**
 * # Safety
 * `p` must be NULL or a handle not yet freed.
 */
void asz_partition_free(struct AszPartition *p);

/**
 * `K_n` as `n - 1` stars.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AszStatus asz_gen_star(size_t n, struct AszPartition **out);

/**
 * Reproducible random instance with at most `m` bicliques on `n >= 2` vertices.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AszStatus asz_gen_random(size_t n, size_t m, uint64_t seed, struct AszPartition **out);

/**
 * Colors a valid instance. With `trace` nonzero the recursion trace is kept
 * for [`asz_coloring_to_json`].
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum AszStatus asz_color(const struct AszPartition *p,
                         enum AszStrategy strategy,
                         bool trace,
                         struct AszColoring **out);

/**
 * # Safety
 * `c` must be NULL or a live handle.
 */
size_t asz_coloring_len(const struct AszColoring *c);

/**
 * # Safety
 * `c` must be NULL or a live handle.
 */
size_t asz_coloring_num_colors(const struct AszColoring *c);

/**
 * Copies the per-vertex colors into `buf`, which holds `len` entries.
 *
 * # Safety
 * `c` must be a live handle and `buf` must have room for `len` values.
 */
enum AszStatus asz_coloring_copy(const struct AszColoring *c, uint64_t *buf, size_t len);

/**
 * The certified color bound as a decimal string.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum AszStatus asz_coloring_bound(const struct AszColoring *c, char **out);

/**
 * The full report (colors, bound, optional trace) as JSON.
 *
 * # Safety
 * `c` must be a live handle and `out` a valid pointer.
 */
enum AszStatus asz_coloring_to_json(const struct AszColoring *c, char **out);

/**
 * # Safety
 * `c` must be NULL or a handle not yet freed.
 */
void asz_coloring_free(struct AszColoring *c);

/**
 * Exact chromatic number of the instance graph (caps from `ASZ_ORACLE_LIMIT`).
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum AszStatus asz_chromatic_number(const struct AszPartition *p, size_t *out);

/**
 * Exact biclique partition number of the instance graph.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum AszStatus asz_bp_exact(const struct AszPartition *p, size_t *out);

/**
 * Entry `k` of a recurrence table as a decimal string.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum AszStatus asz_bound_value(enum AszBoundKind kind, size_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ASZ_H */
