#ifndef LCL_H
#define LCL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every function. The first four mirror the exit
 * codes of the `lcl` tool.
 */
typedef enum LclStatus {
  /**
   * Positive verdict, or plain success.
   */
  LCL_STATUS_OK = 0,
  /**
   * Definitive negative verdict: false, rejected, refuted, untypable.
   */
  LCL_STATUS_NEGATIVE = 1,
  /**
   * Undecided within the given bounds.
   */
  LCL_STATUS_UNKNOWN = 2,
  /**
   * Input text did not parse or was otherwise malformed.
   */
  LCL_STATUS_PARSE_ERROR = 3,
  /**
   * A null pointer or invalid UTF-8 was passed.
   */
  LCL_STATUS_INVALID_ARGUMENT = 4,
  /**
   * An internal failure was caught at the boundary.
   */
  LCL_STATUS_INTERNAL = 5,
} LclStatus;

/**
 * Opaque handle to a term.
 */
typedef struct LclTerm LclTerm;

/**
 * Resource limits; see `lcl_bounds_default`.
 */
typedef struct LclBounds {
  uint64_t fuel;
  size_t arity;
  size_t depth;
} LclBounds;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The default bounds: fuel 10000, arity 3, depth 2.
 */
struct LclBounds lcl_bounds_default(void);

/**
 * Message for the last failure on this thread; empty after success. The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *lcl_last_error(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, not yet freed.
 */
void lcl_string_free(char *s);

/**
 * Parses a term.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum LclStatus lcl_term_parse(const char *src, struct LclTerm **out);

/**
 * Releases a term handle.
 *
 * # Safety
 * `t` must be null or a handle from this library, not yet freed.
 */
void lcl_term_free(struct LclTerm *t);

/**
 * Canonical text of a term, or null for a null handle.
 *
 * # Safety
 * `t` must be null or a live handle.
 */
char *lcl_term_to_string(const struct LclTerm *t);

/**
 * Reduces `t` leftmost-outermost. `LCL_STATUS_OK` with the normal form,
 * or `LCL_STATUS_UNKNOWN` with the reduct reached when the fuel ran out.
 * `steps` may be null.
 *
 * # Safety
 * `t` must be a live handle; `out` writable; `steps` null or writable.
 */
enum LclStatus lcl_term_normalize(const struct LclTerm *t,
                                  uint64_t fuel,
                                  struct LclTerm **out,
                                  uint64_t *steps);

/**
 * Extensional equality within the bounds: OK for equal, NEGATIVE for
 * distinct, UNKNOWN when undecided.
 *
 * # Safety
 * Both handles must be live.
 */
enum LclStatus lcl_ext_equal(const struct LclTerm *m,
                             const struct LclTerm *n,
                             struct LclBounds bounds);

/**
 * Principal type of `t` under a basis such as `"x : a, y : a -> b"`.
 * NEGATIVE when untypable.
 *
 * # Safety
 * `basis` must be a NUL-terminated string, `t` a live handle, `out` null or
 * writable.
 */
enum LclStatus lcl_infer_type(const char *basis, const struct LclTerm *t, char **out);

/**
 * Checks a proof given in the proof file format. `report` (may be null)
 * receives a one-line verdict.
 *
 * # Safety
 * `proof` must be a NUL-terminated string; `report` null or writable.
 */
enum LclStatus lcl_check_proof(const char *proof, struct LclBounds bounds, char **report);

/**
 * Bounded entailment. `theory` holds one formula per line. On OK, `proof`
 * (may be null) receives a proof file; on NEGATIVE it receives the
 * countervaluation; on UNKNOWN the reason.
 *
 * # Safety
 * `theory` and `goal` must be NUL-terminated strings; `proof` null or
 * writable.
 */
enum LclStatus lcl_entails(const char *theory,
                           const char *goal,
                           struct LclBounds bounds,
                           char **proof);

/**
 * Truth of `formula` in the term model over `basis` under the standard
 * environment.
 *
 * # Safety
 * Both arguments must be NUL-terminated strings.
 */
enum LclStatus lcl_model_sat(const char *basis, const char *formula, struct LclBounds bounds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LCL_H */
