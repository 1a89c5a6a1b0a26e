#ifndef SATFORGE_H
#define SATFORGE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SfStatus {
  SF_STATUS_OK = 0,
  SF_STATUS_NULL_POINTER = 1,
  SF_STATUS_INVALID_ARGUMENT = 2,
  SF_STATUS_PARSE = 3,
  SF_STATUS_OUT_OF_RANGE = 4,
  SF_STATUS_NOT_CERTIFIED = 5,
  SF_STATUS_PANIC = 6,
} SfStatus;

/**
 * Values match the CLI exit codes of `check`.
 */
typedef enum SfVerdict {
  SF_VERDICT_SATURATED = 0,
  SF_VERDICT_CONTAINS_MEMBER = 3,
  SF_VERDICT_MISSING_EDGE = 4,
} SfVerdict;

typedef enum SfOrderKind {
  SF_ORDER_KIND_A = 0,
  SF_ORDER_KIND_A0 = 1,
  SF_ORDER_KIND_A1 = 2,
} SfOrderKind;

/**
 * Opaque forbidden-family handle.
 */
typedef struct SfFamily SfFamily;

/**
 * Opaque graph handle.
 */
typedef struct SfGraph SfGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next `sf_` call on the same thread.
 */
const char *sf_last_error_message(void);

/**
 * Static library version string.
 */
const char *sf_version(void);

/**
 * Builds a graph from `edge_count` pairs stored flat in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (or be null when
 * `edge_count` is 0); `out` must be writable.
 */
enum SfStatus sf_graph_new(size_t order,
                           const size_t *edges,
                           size_t edge_count,
                           struct SfGraph **out);

/**
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SfStatus sf_graph_from_graph6(const char *text, struct SfGraph **out);

/**
 * Writes a newly allocated graph6 string to `out`; release it with
 * [`sf_string_free`].
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum SfStatus sf_graph_to_graph6(const struct SfGraph *g, char **out);

/**
 * # Safety
 * `g` must be null or a handle not yet freed.
 */
void sf_graph_free(struct SfGraph *g);

/**
 * Order of `g`, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t sf_graph_order(const struct SfGraph *g);

/**
 * Edge count of `g`, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t sf_graph_edge_count(const struct SfGraph *g);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void sf_string_free(char *s);

/**
 * Parses the family syntax, e.g. `"K3,P10"`, `"K3+P10"`, `"K1*[2,2]"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SfStatus sf_family_parse(const char *text, struct SfFamily **out);

/**
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void sf_family_free(struct SfFamily *f);

/**
 * Decides saturation. For [`SfVerdict::MissingEdge`] the non-edge is
 * written to `u`/`v` when they are non-null.
 *
 * # Safety
 * `g` and `fam` must be live handles; `verdict` must be writable; `u` and
 * `v` must be null or writable.
 */
enum SfStatus sf_check_saturated(const struct SfGraph *g,
                                 const struct SfFamily *fam,
                                 enum SfVerdict *verdict,
                                 size_t *u,
                                 size_t *v);

/**
 * The verdict as JSON, witness included. Free with [`sf_string_free`].
 *
 * # Safety
 * `g` and `fam` must be live handles; `out` must be writable.
 */
enum SfStatus sf_check_saturated_json(const struct SfGraph *g,
                                      const struct SfFamily *fam,
                                      char **out);

/**
 * The extremal `{K3, P_k}`-saturated forest on `n` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum SfStatus sf_make_g0(size_t n, size_t k, struct SfGraph **out);

/**
 * The checker-certified `K3 + P_k`-saturated graph on `n` vertices.
 *
 * # Safety
 * `out` must be writable.
 */
enum SfStatus sf_make_h0(size_t n, size_t k, struct SfGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SfStatus sf_make_star(size_t n, struct SfGraph **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum SfStatus sf_order_constant(enum SfOrderKind kind, size_t k, size_t *out);

/**
 * `sat(n, P_k)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SfStatus sf_sat_pk(size_t n, size_t k, size_t *out);

/**
 * `sat(n, {K3, P_k})`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SfStatus sf_sat_k3_pk(size_t n, size_t k, size_t *out);

/**
 * `sat(n, K_p)`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SfStatus sf_sat_kp(size_t n, size_t p, size_t *out);

/**
 * Bounds on `sat(n, K3 + P_k)`.
 *
 * # Safety
 * `lower` and `upper` must be writable.
 */
enum SfStatus sf_sat_k3_cup_pk_bounds(size_t n, size_t k, size_t *lower, size_t *upper);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SATFORGE_H */
