#ifndef GRADPI_H
#define GRADPI_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GpStatus {
  GP_STATUS_OK = 0,
  GP_STATUS_NULL_POINTER = 1,
  GP_STATUS_INVALID_UTF8 = 2,
  GP_STATUS_CONFIG_ERROR = 3,
  GP_STATUS_PARSE_ERROR = 4,
  GP_STATUS_COMPUTE_ERROR = 5,
  GP_STATUS_PANIC = 6,
} GpStatus;

/**
 * A graded subalgebra together with its coefficient mode and degree
 * universe.
 */
typedef struct GpAlgebra GpAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an algebra from a JSON configuration document. Bicharacter files
 * named in a tensor section are resolved against the working directory.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GpStatus gp_algebra_from_json(const char *config_json, struct GpAlgebra **out);

/**
 * Releases an algebra. Null is accepted.
 *
 * # Safety
 * `algebra` must come from `gp_algebra_from_json` and not be freed twice.
 */
void gp_algebra_free(struct GpAlgebra *algebra);

/**
 * Decides whether `expr`, e.g. `"x[1,1]x[1,2] - x[1,2]x[1,1]"`, is a graded
 * identity.
 *
 * # Safety
 * Pointers must be valid; `expr` NUL-terminated.
 */
enum GpStatus gp_is_graded_identity(const struct GpAlgebra *algebra, const char *expr, bool *out);

/**
 * Decides whether the monomial with the given comma-separated degrees, e.g.
 * `"1,0,1"`, is an identity.
 *
 * # Safety
 * Pointers must be valid; `degrees` NUL-terminated.
 */
enum GpStatus gp_is_monomial_identity(const struct GpAlgebra *algebra,
                                      const char *degrees,
                                      bool *out);

/**
 * Classifies the grading. `witness` receives the shortest identity
 * monomial when degenerate and null otherwise. Infinite groups are
 * reported as not strong.
 *
 * # Safety
 * All pointers must be valid.
 */
enum GpStatus gp_classify(const struct GpAlgebra *algebra,
                          bool *degenerate,
                          bool *strong,
                          char **witness);

/**
 * Writes a JSON array of `{"tag", "polynomial"}` objects generating the
 * graded identities over the configured degree universe.
 *
 * # Safety
 * All pointers must be valid.
 */
enum GpStatus gp_basis_generators(const struct GpAlgebra *algebra, char **out_json);

/**
 * Writes a JSON array of `{"degrees", "monomial"}` objects, the minimal
 * monomial identities in shortlex order.
 *
 * # Safety
 * All pointers must be valid.
 */
enum GpStatus gp_minimal_monomial_basis(const struct GpAlgebra *algebra, char **out_json);

/**
 * Releases a string returned by this library. Null is accepted.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void gp_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library from the same thread.
 */
const char *gp_last_error(void);

/**
 * Library version as a static string.
 */
const char *gp_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRADPI_H */
