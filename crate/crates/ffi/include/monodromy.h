#ifndef MONODROMY_H
#define MONODROMY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MdStatus {
  MD_STATUS_OK = 0,
  MD_STATUS_NULL_POINTER = 1,
  MD_STATUS_PARSE_ERROR = 2,
  MD_STATUS_REJECTED_INPUT = 3,
  MD_STATUS_DIMENSION_MISMATCH = 4,
  MD_STATUS_INTERNAL = 5,
  MD_STATUS_PANIC = 6,
} MdStatus;

/**
 * Opaque certificate handle.
 */
typedef struct MdCertificate MdCertificate;

/**
 * Opaque polytope handle.
 */
typedef struct MdPolytope MdPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *md_last_error_message(void);

/**
 * Certifies an input given as JSON (`{"matrix": ...}` or
 * `{"rank": g, "images": [...]}`).
 *
 * # Safety
 * `input_json` must be a NUL-terminated string; `out` must be writable.
 */
enum MdStatus md_certify_json(const char *input_json, struct MdCertificate **out);

/**
 * Certifies the `g × g` integer matrix stored row-major in `entries`.
 *
 * # Safety
 * `entries` must point to `g * g` values; `out` must be writable.
 */
enum MdStatus md_certify_matrix(const int64_t *entries, size_t g, struct MdCertificate **out);

/**
 * Serializes a certificate; release the string with `md_string_free`.
 *
 * # Safety
 * `cert` must come from a certify call; `out` must be writable.
 */
enum MdStatus md_certificate_to_json(const struct MdCertificate *cert, char **out);

/**
 * Genus, fixed rank `k`, dim H₁(M; ℚ) and dim H₁(W; ℚ). Any output
 * pointer may be NULL.
 *
 * # Safety
 * `cert` must come from a certify call; non-null outputs must be writable.
 */
enum MdStatus md_certificate_dims(const struct MdCertificate *cert,
                                  size_t *genus,
                                  size_t *k,
                                  size_t *dim_m,
                                  size_t *dim_w);

/**
 * # Safety
 * `cert` must come from a certify call (or be NULL) and not be used again.
 */
void md_certificate_free(struct MdCertificate *cert);

/**
 * Re-checks a certificate JSON document. `*ok` is 1 when every invariant
 * holds and 0 otherwise (the violated checks go to the last error message).
 *
 * # Safety
 * `cert_json` must be a NUL-terminated string; `ok` must be writable.
 */
enum MdStatus md_verify_json(const char *cert_json, int *ok);

/**
 * Builds the convex hull of `count` points in ℚ^dim, given as row-major
 * numerator and denominator arrays of length `count * dim`.
 *
 * # Safety
 * `num` and `den` must point to `count * dim` values; `out` must be writable.
 */
enum MdStatus md_polytope_new(size_t dim,
                              const int64_t *num,
                              const int64_t *den,
                              size_t count,
                              struct MdPolytope **out);

/**
 * Number of vertices left after pruning.
 *
 * # Safety
 * `polytope` must come from `md_polytope_new`; `out` must be writable.
 */
enum MdStatus md_polytope_vertex_count(const struct MdPolytope *polytope, size_t *out);

/**
 * Thickness `max ω − min ω` of a rational covector, written as an exact
 * `"p/q"` (or `"p"`) string; release it with `md_string_free`.
 *
 * # Safety
 * `polytope` must come from `md_polytope_new`; `num`/`den` must point to
 * `dim` values; `out` must be writable.
 */
enum MdStatus md_polytope_thickness(const struct MdPolytope *polytope,
                                    const int64_t *num,
                                    const int64_t *den,
                                    size_t dim,
                                    char **out);

/**
 * # Safety
 * `polytope` must come from `md_polytope_new` (or be NULL) and not be used
 * again.
 */
void md_polytope_free(struct MdPolytope *polytope);

/**
 * # Safety
 * `s` must be a string returned by this library (or NULL).
 */
void md_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONODROMY_H */
