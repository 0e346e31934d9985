#ifndef SCHUBCALC_H
#define SCHUBCALC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SchubcalcStatus {
  SCHUBCALC_STATUS_OK = 0,
  SCHUBCALC_STATUS_NULL_POINTER = 1,
  SCHUBCALC_STATUS_INVALID_UTF8 = 2,
  SCHUBCALC_STATUS_INVALID_PERMUTATION = 3,
  SCHUBCALC_STATUS_INVALID_ARGUMENT = 4,
  SCHUBCALC_STATUS_CATALOG = 5,
  SCHUBCALC_STATUS_OVERFLOW = 6,
  SCHUBCALC_STATUS_INTERNAL = 7,
  SCHUBCALC_STATUS_PANIC = 8,
} SchubcalcStatus;

typedef enum SchubcalcKind {
  SCHUBCALC_KIND_PIPE_DREAM = 0,
  SCHUBCALC_KIND_BUMPLESS = 1,
} SchubcalcKind;

// Opaque tile catalog handle.
typedef struct SchubcalcCatalog SchubcalcCatalog;

// Opaque polynomial handle.
typedef struct SchubcalcPolynomial SchubcalcPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The string
// belongs to the library and stays valid until the next failing call.
const char *schubcalc_last_error(void);

// Schubert polynomial of `w` (one-line notation such as "3,1,2"). With
// `n == 0` the size of `w` is used.
//
// # Safety
// `w` must be a NUL-terminated string and `out` a valid pointer.
enum SchubcalcStatus schubcalc_schubert(const char *w,
                                        bool double_,
                                        size_t n,
                                        struct SchubcalcPolynomial **out);

// Parse a polynomial such as "x1^2*x2 - y1".
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum SchubcalcStatus schubcalc_polynomial_parse(const char *text, struct SchubcalcPolynomial **out);

// Canonical text of a polynomial; release with `schubcalc_string_free`.
//
// # Safety
// `p` must come from this library; `out` must be valid.
enum SchubcalcStatus schubcalc_polynomial_to_string(const struct SchubcalcPolynomial *p,
                                                    char **out);

// Value at integer points; fails with `OVERFLOW` if it does not fit in 64
// bits.
//
// # Safety
// `x` and `y` must point to `nx` and `ny` integers (or be NULL when the
// length is 0); `out` must be valid.
enum SchubcalcStatus schubcalc_polynomial_evaluate(const struct SchubcalcPolynomial *p,
                                                   const int64_t *x,
                                                   size_t nx,
                                                   const int64_t *y,
                                                   size_t ny,
                                                   int64_t *out);

// # Safety
// Both handles must come from this library; `out` must be valid.
enum SchubcalcStatus schubcalc_polynomial_equal(const struct SchubcalcPolynomial *a,
                                                const struct SchubcalcPolynomial *b,
                                                bool *out);

// # Safety
// `p` must come from this library or be NULL.
void schubcalc_polynomial_free(struct SchubcalcPolynomial *p);

// # Safety
// `s` must come from this library or be NULL.
void schubcalc_string_free(char *s);

// Number of reduced pipe dreams or bumpless pipe dreams of `w` in `S_n`.
//
// # Safety
// `w` must be a NUL-terminated string and `out` a valid pointer.
enum SchubcalcStatus schubcalc_count_diagrams(const char *w,
                                              enum SchubcalcKind kind,
                                              size_t n,
                                              size_t *out);

// Load a catalog document (JSON).
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum SchubcalcStatus schubcalc_catalog_load(const char *json, struct SchubcalcCatalog **out);

// One of the shipped catalogs: "full", "alt", "pd" or "bpd".
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum SchubcalcStatus schubcalc_catalog_builtin(const char *name, struct SchubcalcCatalog **out);

// # Safety
// `c` must come from this library; `out` must be valid.
enum SchubcalcStatus schubcalc_catalog_tile_count(const struct SchubcalcCatalog *c, size_t *out);

// Exchange-relation sweep for `k` strip columns; writes the number of
// counterexamples.
//
// # Safety
// `c` must come from this library; `counterexamples` must be valid.
enum SchubcalcStatus schubcalc_ybe_check(const struct SchubcalcCatalog *c,
                                         size_t k,
                                         bool constraints,
                                         size_t *counterexamples);

// # Safety
// `c` must come from this library or be NULL.
void schubcalc_catalog_free(struct SchubcalcCatalog *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHUBCALC_H */
