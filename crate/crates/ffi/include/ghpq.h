/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef GHPQ_H
#define GHPQ_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GhpqStatus {
  GHPQ_STATUS_OK = 0,
  /**
   * Null pointer or non-UTF-8 string.
   */
  GHPQ_STATUS_INVALID_ARGUMENT = 1,
  GHPQ_STATUS_INVALID_PARAMS = 2,
  GHPQ_STATUS_UNSUPPORTED = 3,
  GHPQ_STATUS_PARSE_ERROR = 4,
  /**
   * `ghpq_verify` found a failing identity.
   */
  GHPQ_STATUS_IDENTITY_FAILED = 5,
  /**
   * A panic was caught at the boundary.
   */
  GHPQ_STATUS_INTERNAL = 6,
} GhpqStatus;

/**
 * Opaque exact polynomial.
 */
typedef struct GhpqPoly GhpqPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds H_{n,m}^{(p,q)}(z,w|gamma). `strategy` is one of explicit,
 * operational, creation, recurrence, genfun, hypergeom; null means explicit.
 *
 * # Safety
 * `strategy` is null or a valid C string; `out` is a valid pointer.
 */
enum GhpqStatus ghpq_compute(uint32_t p,
                             uint32_t q,
                             uint32_t n,
                             uint32_t m,
                             const char *strategy,
                             struct GhpqPoly **out);

/**
 * Parses a polynomial in z, w, gamma, t.
 *
 * # Safety
 * `src` is a valid C string; `out` is a valid pointer.
 */
enum GhpqStatus ghpq_poly_parse(const char *src, struct GhpqPoly **out);

/**
 * Simultaneous substitution, e.g. `"z=1/2,gamma=-1"`; right-hand sides may
 * use z, w, gamma, t.
 *
 * # Safety
 * `poly` is a live handle, `bindings` a valid C string, `out` a valid pointer.
 */
enum GhpqStatus ghpq_poly_subst(const struct GhpqPoly *poly,
                                const char *bindings,
                                struct GhpqPoly **out);

/**
 * Writes true to `out` when the two polynomials are identical.
 *
 * # Safety
 * Both handles are live; `out` is a valid pointer.
 */
enum GhpqStatus ghpq_poly_equal(const struct GhpqPoly *a, const struct GhpqPoly *b, bool *out);

/**
 * Number of nonzero terms.
 *
 * # Safety
 * `poly` is null or a live handle.
 */
size_t ghpq_poly_term_count(const struct GhpqPoly *poly);

/**
 * ASCII text such as `z^2*w + 2*z*gamma`. Free with [`ghpq_string_free`].
 *
 * # Safety
 * `poly` is a live handle; `out` is a valid pointer.
 */
enum GhpqStatus ghpq_poly_to_text(const struct GhpqPoly *poly, char **out);

/**
 * LaTeX such as `z^{2}w + 2\gamma z`.
 *
 * # Safety
 * `poly` is a live handle; `out` is a valid pointer.
 */
enum GhpqStatus ghpq_poly_to_latex(const struct GhpqPoly *poly, char **out);

/**
 * JSON array of `{"exps": {...}, "num": "...", "den": "..."}` terms.
 *
 * # Safety
 * `poly` is a live handle; `out` is a valid pointer.
 */
enum GhpqStatus ghpq_poly_to_json(const struct GhpqPoly *poly, char **out);

/**
 * Solves c d_z^p d_w^q u = d_t u with u(z,w;0) = `initial`. `c` is a
 * rational such as `"-3/7"`.
 *
 * # Safety
 * `c` and `initial` are valid C strings; `out` is a valid pointer.
 */
enum GhpqStatus ghpq_heat_solve(uint32_t p,
                                uint32_t q,
                                const char *c,
                                const char *initial,
                                struct GhpqPoly **out);

/**
 * Checks one identity tag (or `"all"`) over n ≤ `nmax`, m ≤ `mmax` and the
 * (p,q) list `pq` (e.g. `"1,1;2,1"`). `variant` is printed, corrected or
 * both. Returns `GHPQ_STATUS_IDENTITY_FAILED` if any cell fails. When
 * `report_json` is non-null it receives the JSON report array.
 *
 * # Safety
 * String arguments are valid C strings; `report_json` is null or valid.
 */
enum GhpqStatus ghpq_verify(const char *tag,
                            const char *pq,
                            uint32_t nmax,
                            uint32_t mmax,
                            size_t order,
                            const char *variant,
                            char **report_json);

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *ghpq_last_error_message(void);

/**
 * # Safety
 * `poly` is null or a handle not yet freed.
 */
void ghpq_poly_free(struct GhpqPoly *poly);

/**
 * # Safety
 * `s` is null or a string returned by this library and not yet freed.
 */
void ghpq_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GHPQ_H */
