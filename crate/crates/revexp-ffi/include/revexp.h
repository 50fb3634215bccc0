#ifndef REVEXP_H
#define REVEXP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RevexpFormat {
  REVEXP_FORMAT_DOT = 0,
  REVEXP_FORMAT_JSON = 1,
} RevexpFormat;

typedef enum RevexpStatus {
  REVEXP_STATUS_OK = 0,
  REVEXP_STATUS_NULL_ARGUMENT = 1,
  REVEXP_STATUS_INVALID_UTF8 = 2,
  REVEXP_STATUS_SYNTAX = 3,
  REVEXP_STATUS_ILL_FORMED = 4,
  REVEXP_STATUS_NOT_REACHABLE = 5,
  REVEXP_STATUS_STATE_BUDGET = 6,
  REVEXP_STATUS_ORDER_INCOMPARABLE = 7,
  REVEXP_STATUS_NOT_NORMAL = 8,
  REVEXP_STATUS_INVALID = 9,
} RevexpStatus;

typedef enum RevexpTheory {
  REVEXP_THEORY_F = 0,
  REVEXP_THEORY_R = 1,
  REVEXP_THEORY_FR = 2,
} RevexpTheory;

typedef enum RevexpVariant {
  REVEXP_VARIANT_FB = 0,
  REVEXP_VARIANT_FBPS = 1,
  REVEXP_VARIANT_RB = 2,
  REVEXP_VARIANT_FRB = 3,
} RevexpVariant;

/**
 * Opaque handle for an encoded (sequential, ready-set annotated) term.
 */
typedef struct RevexpBrs RevexpBrs;

/**
 * Opaque process handle.
 */
typedef struct RevexpProcess RevexpProcess;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *revexp_last_error(void);

/**
 * Parses a well-formed process.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a valid pointer to write to.
 */
enum RevexpStatus revexp_process_parse(const char *src, struct RevexpProcess **out);

/**
 * Releases a process handle. Null is ignored.
 *
 * # Safety
 * `p` must come from this library and not have been freed.
 */
void revexp_process_free(struct RevexpProcess *p);

/**
 * Renders a process; free the result with [`revexp_string_free`].
 *
 * # Safety
 * `p` must be a live handle; `out` a valid pointer to write to.
 */
enum RevexpStatus revexp_process_render(const struct RevexpProcess *p, bool unicode, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void revexp_string_free(char *s);

/**
 * Decides a bisimilarity between two processes.
 *
 * # Safety
 * Handles must be live; `out_equivalent` a valid pointer to write to.
 * Enum arguments must hold one of their declared values.
 */
enum RevexpStatus revexp_check(const struct RevexpProcess *p1,
                               const struct RevexpProcess *p2,
                               enum RevexpVariant variant,
                               bool *out_equivalent);

/**
 * Encodes a reachable process with the default execution order.
 *
 * # Safety
 * `p` must be a live handle; `out` a valid pointer to write to.
 */
enum RevexpStatus revexp_encode(const struct RevexpProcess *p, struct RevexpBrs **out);

/**
 * Parses an encoded term such as `<a!,{a}>.0`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` a valid pointer to write to.
 */
enum RevexpStatus revexp_brs_parse(const char *src, struct RevexpBrs **out);

/**
 * Releases an encoded-term handle. Null is ignored.
 *
 * # Safety
 * `u` must come from this library and not have been freed.
 */
void revexp_brs_free(struct RevexpBrs *u);

/**
 * Renders an encoded term; free the result with [`revexp_string_free`].
 *
 * # Safety
 * `u` must be a live handle; `out` a valid pointer to write to.
 */
enum RevexpStatus revexp_brs_render(const struct RevexpBrs *u, bool unicode, char **out);

/**
 * Decides a bisimilarity between encoded terms, observing ready sets.
 *
 * # Safety
 * Handles must be live; `out_equivalent` a valid pointer to write to.
 * Enum arguments must hold one of their declared values.
 */
enum RevexpStatus revexp_check_brs(const struct RevexpBrs *u1,
                                   const struct RevexpBrs *u2,
                                   enum RevexpVariant variant,
                                   bool *out_equivalent);

/**
 * Decides derivable equality of two processes in an axiom system.
 *
 * # Safety
 * Handles must be live; `out_equal` a valid pointer to write to.
 * Enum arguments must hold one of their declared values.
 */
enum RevexpStatus revexp_prove_eq(const struct RevexpProcess *p1,
                                  const struct RevexpProcess *p2,
                                  enum RevexpTheory theory,
                                  bool *out_equal);

/**
 * Forward normal form of a process as a new handle.
 *
 * # Safety
 * `p` must be a live handle; `out` a valid pointer to write to.
 */
enum RevexpStatus revexp_normalize_f(const struct RevexpProcess *p, struct RevexpProcess **out);

/**
 * Exports the transition system of the initial version of `p`, or of its
 * encoding when `brs` is set. Free the result with [`revexp_string_free`].
 *
 * # Safety
 * `p` must be a live handle; `out` a valid pointer to write to.
 * Enum arguments must hold one of their declared values.
 */
enum RevexpStatus revexp_lts_export(const struct RevexpProcess *p,
                                    enum RevexpFormat format,
                                    bool brs,
                                    char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REVEXP_H */
