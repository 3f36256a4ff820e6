#ifndef BIHOM_POISSON_H
#define BIHOM_POISSON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every entry point.
typedef enum BhpStatus {
  BHP_STATUS_OK = 0,
  BHP_STATUS_NULL_POINTER = 1,
  BHP_STATUS_INVALID_UTF8 = 2,
  BHP_STATUS_PARSE_ERROR = 3,
  BHP_STATUS_DIMENSION_MISMATCH = 4,
  BHP_STATUS_INVALID_ARGUMENT = 5,
  // The input is well formed but a required identity or hypothesis fails.
  BHP_STATUS_ALGEBRAIC_FAILURE = 6,
  BHP_STATUS_SINGULAR_MATRIX = 7,
  BHP_STATUS_PANIC = 8,
} BhpStatus;

// Opaque handle to an algebra.
typedef struct BhpAlgebra BhpAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or null if the last
// call succeeded. The pointer stays valid until the next call.
const char *bhp_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and must not be freed twice.
void bhp_string_free(char *s);

// Parses an algebra from its JSON description.
//
// # Safety
// `json` must be a valid C string and `out` writable.
enum BhpStatus bhp_algebra_from_json(const char *json, struct BhpAlgebra **out);

// Serializes an algebra. Tensors of large algebras use the sparse encoding.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum BhpStatus bhp_algebra_to_json(const struct BhpAlgebra *a, char **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `a` must come from this library and must not be freed twice.
void bhp_algebra_free(struct BhpAlgebra *a);

// Dimension of the underlying space, or 0 for a null handle.
//
// # Safety
// `a` must be null or a live handle.
size_t bhp_algebra_dim(const struct BhpAlgebra *a);

// Runs every BiHom-Poisson identity. `passed` receives the verdict;
// `report_json`, if not null, receives the full report.
//
// # Safety
// `a` must be a live handle, `passed` writable, `report_json` null or writable.
enum BhpStatus bhp_check_poisson(const struct BhpAlgebra *a, bool *passed, char **report_json);

// Yau twist by the pair of matrices given as JSON arrays of rational strings.
//
// # Safety
// `a` must be a live handle, the matrices valid C strings and `out` writable.
enum BhpStatus bhp_yau_twist(const struct BhpAlgebra *a,
                             const char *alpha_prime_json,
                             const char *beta_prime_json,
                             struct BhpAlgebra **out);

// The polarized algebra with bracket built from the commutator of the product.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum BhpStatus bhp_polarize(const struct BhpAlgebra *a, struct BhpAlgebra **out);

// Dimension of an operator space such as `"der"`, `"qder"` or `"centroid"`
// with twist exponents `k` and `l`.
//
// # Safety
// `a` must be a live handle, `kind` a valid C string and `out` writable.
enum BhpStatus bhp_operator_space_dim(const struct BhpAlgebra *a,
                                      const char *kind,
                                      uint32_t k,
                                      uint32_t l,
                                      size_t *out);

// Cochain, cocycle and cohomology dimensions in degrees one and two as JSON.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum BhpStatus bhp_cohomology_json(const struct BhpAlgebra *a, bool strict, char **out);

// The two-dimensional example with parameters `a` and `b` given as rational strings.
//
// # Safety
// `a_param` and `b_param` must be valid C strings and `out` writable.
enum BhpStatus bhp_example_e1(const char *a_param, const char *b_param, struct BhpAlgebra **out);

// Truncated symmetric algebra of sl(2) up to degree `deg`. When `lambda` or
// `gamma` is not null the result is twisted by the matching diagonal maps;
// a null parameter counts as 1.
//
// # Safety
// `lambda` and `gamma` must be null or valid C strings and `out` writable.
enum BhpStatus bhp_example_sl2(uint32_t deg,
                               const char *lambda,
                               const char *gamma,
                               struct BhpAlgebra **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BIHOM_POISSON_H */
