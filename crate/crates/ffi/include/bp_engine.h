#ifndef BP_ENGINE_H
#define BP_ENGINE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  BP_STATUS_OK = 0,
  /**
   * A check ran to completion and found a violation. The report is still written.
   */
  BP_STATUS_CHECK_FAILED = 1,
  BP_STATUS_NULL_POINTER = 2,
  BP_STATUS_INVALID_UTF8 = 3,
  BP_STATUS_INVALID_PRIME = 4,
  BP_STATUS_PARSE = 5,
  BP_STATUS_FUEL_EXHAUSTED = 6,
  BP_STATUS_INVALID_GRADING = 7,
  BP_STATUS_UNSUPPORTED_SCHEME = 8,
  BP_STATUS_INTERNAL = 9,
} BpStatus;

typedef enum {
  /**
   * `b ⊗ 1 + 1 ⊗ b`
   */
  BP_SCHEME_SINGER = 0,
  /**
   * `b ⊗ P0 + P0 ⊗ b` with the parities given alongside
   */
  BP_SCHEME_GEOMETRIC = 1,
} BpScheme;

/**
 * Opaque engine handle.
 */
typedef struct BpEngine BpEngine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an engine for the odd prime `p`. A `fuel` of 0 selects the
 * default rewrite budget.
 *
 * # Safety
 * `out` must be null or valid for a pointer write.
 */
BpStatus bp_engine_new(uint32_t p, uint64_t fuel, BpEngine **out);

/**
 * # Safety
 * `engine` must be null or a handle from [`bp_engine_new`] not yet freed.
 */
void bp_engine_free(BpEngine *engine);

/**
 * The prime an engine was built for, or 0 for a null handle.
 *
 * # Safety
 * `engine` must be null or a live handle.
 */
uint32_t bp_engine_prime(const BpEngine *engine);

/**
 * Normal form of `expr` as `{"p":..,"terms":[..]}`.
 *
 * # Safety
 * `engine` must be a live handle, `expr` a NUL-terminated string and
 * `out` valid for a pointer write.
 */
BpStatus bp_normalize(const BpEngine *engine, const char *expr, char **out);

/**
 * Normal form of the product `left * right`.
 *
 * # Safety
 * As for [`bp_normalize`], with both strings NUL-terminated.
 */
BpStatus bp_multiply(const BpEngine *engine, const char *left, const char *right, char **out);

/**
 * Admissible words of bidegree `(n, s)` as a JSON array of strings.
 *
 * # Safety
 * `engine` must be a live handle and `out` valid for a pointer write.
 */
BpStatus bp_basis(const BpEngine *engine, uint64_t n, uint64_t s, char **out);

/**
 * Normalized coproduct of `expr` under the chosen scheme. The parity flags
 * only matter for [`BpScheme::Geometric`].
 *
 * # Safety
 * As for [`bp_normalize`].
 */
BpStatus bp_coproduct(const BpEngine *engine,
                      const char *expr,
                      BpScheme kind,
                      bool beta_odd,
                      bool p0_odd,
                      char **out);

/**
 * Checks every relation instance with `a, b <= max`, then counit and
 * coassociativity up to internal degree `n_max` and `s <= s_max` when the
 * scheme has a concrete grading. Returns `CheckFailed` on any violation.
 *
 * # Safety
 * `engine` must be a live handle and `out` valid for a pointer write.
 */
BpStatus bp_check_coproduct(const BpEngine *engine,
                            BpScheme kind,
                            bool beta_odd,
                            bool p0_odd,
                            uint32_t max,
                            uint64_t n_max,
                            uint64_t s_max,
                            char **out);

/**
 * The four parity cases of `(b ⊗ P0 + P0 ⊗ b)^2`. `Ok` means the
 * obstruction was reproduced in every case.
 *
 * # Safety
 * `engine` must be a live handle and `out` valid for a pointer write.
 */
BpStatus bp_obstruction(const BpEngine *engine, char **out);

/**
 * Squares `b P0 ⊗ P0 P0 + P0 P0 ⊗ b P0` and reports the trace.
 *
 * # Safety
 * `engine` must be a live handle and `out` valid for a pointer write.
 */
BpStatus bp_cp_check(const BpEngine *engine, char **out);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string produced here and not yet freed.
 */
void bp_string_free(char *s);

/**
 * Message for the most recent failure on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *bp_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BP_ENGINE_H */
