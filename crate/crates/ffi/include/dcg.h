#ifndef DCG_H
#define DCG_H

/* Generated by cbindgen from dcg-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum DcgStatus {
  DCG_STATUS_OK = 0,
  DCG_STATUS_NULL_POINTER = 1,
  DCG_STATUS_INVALID_ARGUMENT = 2,
  DCG_STATUS_DOMAIN_ERROR = 3,
  DCG_STATUS_BUDGET_EXCEEDED = 4,
  DCG_STATUS_INTERNAL_ERROR = 5,
} DcgStatus;

/**
 * Opaque handle to a loopless digraph.
 */
typedef struct DcgDigraph DcgDigraph;

/**
 * Opaque handle to a validated finite group.
 */
typedef struct DcgGroup DcgGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *dcg_version(void);

/**
 * Most recent error message on this thread, or null when none. The
 * returned string must be freed with `dcg_string_free`.
 */
char *dcg_last_error_message(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must have been returned by a dcg function and not yet freed.
 */
void dcg_string_free(char *s);

/**
 * Parse a group from JSON (table form or generator form).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum DcgStatus dcg_group_from_json(const char *text, struct DcgGroup **out);

/**
 * Look up a bundled fixture group by name (for example "z6", "s3", "q8").
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum DcgStatus dcg_group_fixture(const char *name, struct DcgGroup **out);

/**
 * Order of the group; 0 for a null handle.
 *
 * # Safety
 * `group` must be a live handle or null.
 */
uintptr_t dcg_group_order(const struct DcgGroup *group);

/**
 * Canonical JSON for the group; free with `dcg_string_free`.
 *
 * # Safety
 * `group` must be a live handle.
 */
char *dcg_group_to_json(const struct DcgGroup *group);

/**
 * Release a group handle.
 *
 * # Safety
 * `group` must have come from this library and not yet be freed.
 */
void dcg_group_free(struct DcgGroup *group);

/**
 * Build the Cayley digraph Cay(G, S) for a connection set given as an
 * array of element indices.
 *
 * # Safety
 * `group` must be a live handle; `conn` must point to `conn_len` u32
 * values (or be null when `conn_len` is 0); `out` must be valid.
 */
enum DcgStatus dcg_cayley_digraph(const struct DcgGroup *group,
                                  const uint32_t *conn,
                                  uintptr_t conn_len,
                                  struct DcgDigraph **out);

/**
 * Build the double coset digraph Cos(G, H, S); an empty subgroup array
 * means the trivial subgroup, giving the Cayley digraph.
 *
 * # Safety
 * Pointer arguments follow the same rules as `dcg_cayley_digraph`.
 */
enum DcgStatus dcg_coset_digraph(const struct DcgGroup *group,
                                 const uint32_t *subgroup,
                                 uintptr_t subgroup_len,
                                 const uint32_t *conn,
                                 uintptr_t conn_len,
                                 struct DcgDigraph **out);

/**
 * Parse a digraph from JSON with fields n and arcs.
 *
 * # Safety
 * `text` must be NUL-terminated; `out` must be valid.
 */
enum DcgStatus dcg_digraph_from_json(const char *text, struct DcgDigraph **out);

/**
 * # Safety
 * `digraph` must be a live handle or null.
 */
uintptr_t dcg_digraph_vertex_count(const struct DcgDigraph *digraph);

/**
 * # Safety
 * `digraph` must be a live handle or null.
 */
uintptr_t dcg_digraph_arc_count(const struct DcgDigraph *digraph);

/**
 * 1 when the arc (u, v) is present, 0 otherwise (including out-of-range).
 *
 * # Safety
 * `digraph` must be a live handle or null.
 */
int32_t dcg_digraph_has_arc(const struct DcgDigraph *digraph, uintptr_t u, uintptr_t v);

/**
 * Canonical JSON for the digraph; free with `dcg_string_free`.
 *
 * # Safety
 * `digraph` must be a live handle.
 */
char *dcg_digraph_to_json(const struct DcgDigraph *digraph);

/**
 * Release a digraph handle.
 *
 * # Safety
 * `digraph` must have come from this library and not yet be freed.
 */
void dcg_digraph_free(struct DcgDigraph *digraph);

/**
 * Exact order of the digraph's automorphism group as a decimal string
 * (arbitrary precision); free with `dcg_string_free`.
 *
 * # Safety
 * `digraph` must be a live handle; `out` must be valid.
 */
enum DcgStatus dcg_aut_order(const struct DcgDigraph *digraph, uintptr_t max_vertices, char **out);

/**
 * Wreath witnesses and the maximal decomposition of Cos(G, H, S), as a
 * JSON report; free with `dcg_string_free`.
 *
 * # Safety
 * Pointer arguments follow the same rules as `dcg_coset_digraph`.
 */
enum DcgStatus dcg_recognize_json(const struct DcgGroup *group,
                                  const uint32_t *subgroup,
                                  uintptr_t subgroup_len,
                                  const uint32_t *conn,
                                  uintptr_t conn_len,
                                  char **out);

/**
 * Decide isomorphism of two coset specifications given as JSON (fields
 * group, H, S) and return a JSON verdict with the vertex mapping; free
 * with `dcg_string_free`.
 *
 * # Safety
 * `first` and `second` must be NUL-terminated; `out` must be valid.
 */
enum DcgStatus dcg_coset_iso_json(const char *first, const char *second, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DCG_H */
