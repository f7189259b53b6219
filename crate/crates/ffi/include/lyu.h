#ifndef LYU_H
#define LYU_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum {
  LYU_STATUS_OK = 0,
  LYU_STATUS_PARSE = 1,
  LYU_STATUS_INVALID_INPUT = 2,
  LYU_STATUS_BUDGET = 3,
  LYU_STATUS_INTERNAL = 4,
  LYU_STATUS_NULL_ARGUMENT = 5,
  LYU_STATUS_PANIC = 6,
} LyuStatus;

/**
 * A monomial ideal.
 */
typedef struct LyuIdeal LyuIdeal;

/**
 * A computed Betti, ν- or Lyubeznik table.
 */
typedef struct LyuTable LyuTable;

/**
 * Computation settings. A null pointer means: characteristic 0, exact ranks.
 */
typedef struct {
  /**
   * 0 for the rationals, otherwise a prime.
   */
  uint32_t characteristic;
  /**
   * Nonzero selects randomized generic ranks.
   */
  uint8_t randomized;
  uint64_t seed;
  uint32_t trials;
} LyuOptions;

/**
 * Message of the last failed call on this thread ("" after a success).
 * The pointer stays valid until the next lyu call on the same thread.
 */
const char *lyu_last_error(void);

/**
 * Parse an ideal (JSON or line format). A simplicial complex is accepted
 * and converted to its Stanley-Reisner ideal.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
LyuStatus lyu_ideal_parse(const char *text, LyuIdeal **out);

/**
 * Alexander dual of a squarefree ideal.
 *
 * # Safety
 * `ideal` must come from this library; `out` must be valid.
 */
LyuStatus lyu_ideal_dual(const LyuIdeal *ideal, LyuIdeal **out);

/**
 * Number of variables, or 0 for a null handle.
 *
 * # Safety
 * `ideal` must be null or come from this library.
 */
size_t lyu_ideal_num_vars(const LyuIdeal *ideal);

/**
 * Number of minimal generators, or 0 for a null handle.
 *
 * # Safety
 * `ideal` must be null or come from this library.
 */
size_t lyu_ideal_num_gens(const LyuIdeal *ideal);

/**
 * # Safety
 * `ideal` must be null or come from this library, and not be used again.
 */
void lyu_ideal_free(LyuIdeal *ideal);

/**
 * Graded Betti table of the ideal.
 *
 * # Safety
 * `ideal` must come from this library; `opts` null or valid; `out` valid.
 */
LyuStatus lyu_betti(const LyuIdeal *ideal, const LyuOptions *opts, LyuTable **out);

/**
 * ν-table of the ideal.
 *
 * # Safety
 * As for [`lyu_betti`].
 */
LyuStatus lyu_nu(const LyuIdeal *ideal, const LyuOptions *opts, LyuTable **out);

/**
 * Lyubeznik table of R/I.
 *
 * # Safety
 * As for [`lyu_betti`].
 */
LyuStatus lyu_lyubeznik(const LyuIdeal *ideal, const LyuOptions *opts, LyuTable **out);

/**
 * Entry (a, b) of a table: β_{a,b}, ν_{a,b} or λ_{a,b}.
 *
 * # Safety
 * `table` must come from this library; `value` must be valid.
 */
LyuStatus lyu_table_get(const LyuTable *table, size_t a, size_t b, size_t *value);

/**
 * The d of a Lyubeznik table, the l of a ν-table, 0 for a Betti table.
 *
 * # Safety
 * `table` must be null or come from this library.
 */
size_t lyu_table_dim(const LyuTable *table);

/**
 * Number of violated structural identities (always 0 for Betti tables).
 *
 * # Safety
 * `table` must come from this library; `count` must be valid.
 */
LyuStatus lyu_table_check(const LyuTable *table, size_t *count);

/**
 * JSON rendering of a table; release with [`lyu_string_free`].
 *
 * # Safety
 * `table` must come from this library; `out` must be valid.
 */
LyuStatus lyu_table_json(const LyuTable *table, char **out);

/**
 * # Safety
 * `table` must be null or come from this library, and not be used again.
 */
void lyu_table_free(LyuTable *table);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void lyu_string_free(char *s);

#endif  /* LYU_H */
