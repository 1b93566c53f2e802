#ifndef TREELIKE_H
#define TREELIKE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  TL_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  TL_STATUS_NULL = 1,
  TL_STATUS_PARSE = 2,
  /**
   * The input parsed but violates an invariant.
   */
  TL_STATUS_INVALID = 3,
  TL_STATUS_RANGE = 4,
  TL_STATUS_UTF8 = 5,
  TL_STATUS_PANIC = 6,
  /**
   * An enumerator has no more items.
   */
  TL_STATUS_DONE = 7,
} TlStatus;

/**
 * Streams the tree-like tableaux of one size in canonical order.
 */
typedef struct TlEnumerator TlEnumerator;

/**
 * A permutation tableau.
 */
typedef struct TlPermTableau TlPermTableau;

/**
 * A tree-like tableau.
 */
typedef struct TlTableau TlTableau;

/**
 * Statistics of a tree-like tableau.
 */
typedef struct {
  size_t size;
  size_t corners;
  size_t occupied_corners;
  size_t non_occupied_corners;
  size_t top;
  size_t left;
  size_t first_row_points;
  size_t first_column_points;
} TlStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *tl_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be used afterwards.
 */
void tl_string_free(char *s);

/**
 * Parses a tree-like tableau from its text form.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
TlStatus tl_tableau_parse(const char *text, TlTableau **out);

/**
 * # Safety
 * `t` must come from this library and must not be used afterwards.
 */
void tl_tableau_free(TlTableau *t);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
TlStatus tl_tableau_to_text(const TlTableau *t, char **out);

/**
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
TlStatus tl_tableau_stats(const TlTableau *t, TlStats *out);

/**
 * Applies φ.
 *
 * # Safety
 * `t` must be a live handle; `out` must be writable.
 */
TlStatus tl_phi(const TlTableau *t, TlPermTableau **out);

/**
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
TlStatus tl_perm_tableau_parse(const char *text, TlPermTableau **out);

/**
 * # Safety
 * `p` must come from this library and must not be used afterwards.
 */
void tl_perm_tableau_free(TlPermTableau *p);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
TlStatus tl_perm_tableau_to_text(const TlPermTableau *p, char **out);

/**
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
TlStatus tl_perm_tableau_corners(const TlPermTableau *p, size_t *out);

/**
 * Inverse of [`tl_phi`].
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
TlStatus tl_phi_inverse(const TlPermTableau *p, TlTableau **out);

/**
 * # Safety
 * `out` must be writable.
 */
TlStatus tl_enumerator_new(size_t size, TlEnumerator **out);

/**
 * Stores the next tableau in `out`, or returns `TL_STATUS_DONE`.
 *
 * # Safety
 * `e` must be a live handle; `out` must be writable.
 */
TlStatus tl_enumerator_next(TlEnumerator *e, TlTableau **out);

/**
 * # Safety
 * `e` must come from this library and must not be used afterwards.
 */
void tl_enumerator_free(TlEnumerator *e);

/**
 * Number of corners of a border path given as an `S`/`W` string.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
TlStatus tl_path_corners(const char *path, size_t *out);

/**
 * Maps a triplet (three lines: left cycles, right cycles, colored word)
 * to a permutation with a marked run, as `"perm\nmark k"`.
 *
 * # Safety
 * `triplet` must be a NUL-terminated string; `out` must be writable.
 */
TlStatus tl_triplet_to_run(const char *triplet, char **out);

/**
 * Inverse of [`tl_triplet_to_run`]. `perm` holds `len` values in one-line
 * notation and `k` is the 1-based marked position.
 *
 * # Safety
 * `perm` must point to `len` readable values; `out` must be writable.
 */
TlStatus tl_run_to_triplet(const size_t *perm, size_t len, size_t k, char **out);

/**
 * Runs one verification check at size `n`. `matched` receives whether the
 * closed form agrees with the exhaustive computation.
 *
 * # Safety
 * `check` must be a NUL-terminated string; `matched` must be writable.
 */
TlStatus tl_verify(const char *check, size_t n, bool *matched);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREELIKE_H */
