#ifndef HBKNOT_H
#define HBKNOT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stdint.h>

typedef enum HbkJsjType {
  HBK_JSJ_TYPE_M = 0,
  HBK_JSJ_TYPE_K = 1,
} HbkJsjType;

typedef enum HbkMcg {
  HBK_MCG_Z2 = 0,
  HBK_MCG_Z2X_Z2 = 1,
} HbkMcg;

typedef enum HbkStatus {
  HBK_STATUS_OK = 0,
  HBK_STATUS_NULL_POINTER = 1,
  HBK_STATUS_INVALID_UTF8 = 2,
  HBK_STATUS_PARSE = 3,
  HBK_STATUS_INVALID_PARAMS = 4,
  HBK_STATUS_OVERFLOW = 5,
  HBK_STATUS_PRECONDITION = 6,
  HBK_STATUS_REQUIRES_TYPE_K = 7,
  HBK_STATUS_INTERNAL = 8,
} HbkStatus;

typedef enum HbkSuite {
  HBK_SUITE_LEMMAS = 0,
  HBK_SUITE_ORACLES = 1,
  HBK_SUITE_COLLISIONS = 2,
  HBK_SUITE_ALL = 3,
} HbkSuite;

/**
 * Opaque handle to a validated handlebody-knot.
 */
typedef struct HbkKnot HbkKnot;

/**
 * `num/den` in lowest terms with `den >= 0`; `1/0` is ∞.
 */
typedef struct HbkRational {
  int64_t num;
  int64_t den;
} HbkRational;

/**
 * Slope invariants. Type M fills `r_a`, `r_b`; type K fills `r1`, `r2`,
 * `r_c`. Unused fields are `0/0`.
 */
typedef struct HbkSlopes {
  enum HbkJsjType jsj_type;
  struct HbkRational r_a;
  struct HbkRational r_b;
  struct HbkRational r1;
  struct HbkRational r2;
  struct HbkRational r_c;
} HbkSlopes;

typedef struct HbkVerifyResult {
  bool passed;
  uint64_t checks;
  uint64_t violations;
} HbkVerifyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `R:l,m,n,p` or `L:m,n,p` into a new handle.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HbkStatus hbk_knot_parse(const char *spec, struct HbkKnot **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum HbkStatus hbk_knot_new_right(int64_t l, int64_t m, int64_t n, int64_t p, struct HbkKnot **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum HbkStatus hbk_knot_new_left(int64_t m, int64_t n, int64_t p, struct HbkKnot **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `knot` must come from this library and not be freed twice.
 */
void hbk_knot_free(struct HbkKnot *knot);

/**
 * Writes `l, m, n, p` and whether the knot is a left knot (whose `l` is a
 * placeholder).
 *
 * # Safety
 * `knot` must be a live handle and `params` point to four `int64_t`.
 */
enum HbkStatus hbk_knot_params(const struct HbkKnot *knot, int64_t *params, bool *is_left);

/**
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer.
 */
enum HbkStatus hbk_knot_jsj_type(const struct HbkKnot *knot, enum HbkJsjType *out);

/**
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer.
 */
enum HbkStatus hbk_knot_mcg(const struct HbkKnot *knot, enum HbkMcg *out);

/**
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer.
 */
enum HbkStatus hbk_knot_slopes(const struct HbkKnot *knot, struct HbkSlopes *out);

/**
 * New handle for the left form of a type K knot (a copy otherwise).
 *
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer.
 */
enum HbkStatus hbk_knot_canonicalize(const struct HbkKnot *knot, struct HbkKnot **out);

/**
 * New handle for the mirror image.
 *
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer.
 */
enum HbkStatus hbk_knot_mirror(const struct HbkKnot *knot, struct HbkKnot **out);

/**
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum HbkStatus hbk_equivalent(const struct HbkKnot *a, const struct HbkKnot *b, bool *out);

/**
 * Whether `b` is equivalent to the mirror image of `a`.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum HbkStatus hbk_mirror_equivalent(const struct HbkKnot *a, const struct HbkKnot *b, bool *out);

/**
 * Type K knots only; returns `RequiresTypeK` otherwise.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a valid pointer.
 */
enum HbkStatus hbk_exteriors_homeomorphic(const struct HbkKnot *a,
                                          const struct HbkKnot *b,
                                          bool *out);

/**
 * `R:l,m,n,p` or `L:m,n,p`. Free with [`hbk_string_free`].
 *
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer.
 */
enum HbkStatus hbk_knot_to_string(const struct HbkKnot *knot, char **out);

/**
 * The JSON document printed by `hbk --format json invariants`. Free with
 * [`hbk_string_free`].
 *
 * # Safety
 * `knot` must be a live handle and `out` a valid pointer.
 */
enum HbkStatus hbk_knot_invariants_json(const struct HbkKnot *knot, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void hbk_string_free(char *s);

/**
 * Runs verification suites. `bound <= 0` selects each suite's default.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum HbkStatus hbk_verify(enum HbkSuite suite, int64_t bound, struct HbkVerifyResult *out);

/**
 * Static description of a status code.
 */
const char *hbk_status_message(enum HbkStatus status);

/**
 * Details of the last failure on this thread, or null. Valid until the next
 * call into the library on the same thread.
 */
const char *hbk_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HBKNOT_H */
