#ifndef RANKFOLD_H
#define RANKFOLD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum RfStatus {
  RF_STATUS_OK = 0,
  RF_STATUS_NULL_POINTER = 1,
  RF_STATUS_INVALID_ARGUMENT = 2,
  RF_STATUS_INVALID_UTF8 = 3,
  RF_STATUS_INVALID_JSON = 4,
  RF_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * The decoder detected a failure and returned no codeword.
   */
  RF_STATUS_DECODE_FAILURE = 6,
  RF_STATUS_PANIC = 7,
} RfStatus;

/**
 * Plotkin code built from two Gabidulin codes over GF(q^m).
 */
typedef struct RfPlotkin RfPlotkin;

/**
 * Reed–Muller code over the multiquadratic tower of the first m primes.
 */
typedef struct RfRmCode RfRmCode;

/**
 * Result of a fold Monte Carlo run.
 */
typedef struct RfFoldStats {
  uint64_t trials;
  uint64_t drops;
  double rate;
  double ci95_low;
  double ci95_high;
  /**
   * q^(t−m−1) for square a, q^(2t−2m−2) otherwise.
   */
  double predicted_bound;
  /**
   * 1 when a is a square mod q.
   */
  int32_t square;
} RfFoldStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string. Do not free it.
 */
const char *rf_version(void);

/**
 * Copy of the last error message on this thread, or NULL if the last call
 * succeeded. Release with [`rf_string_free`].
 */
char *rf_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library that has not been
 * freed yet.
 */
void rf_string_free(char *s);

/**
 * Creates RM(r, m) over Q(√2, √3, …, √p_m). Requires m ≤ 8 and −1 ≤ r ≤ m.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum RfStatus rf_rm_code_new(uint32_t m, int32_t r, struct RfRmCode **out);

/**
 * Writes the block length n = 2^m, the dimension and the decoding radius.
 *
 * # Safety
 * `code` must be a live handle; the output pointers must be valid or NULL.
 */
enum RfStatus rf_rm_code_params(const struct RfRmCode *code,
                                size_t *n,
                                size_t *dimension,
                                size_t *radius);

/**
 * Decodes an n×n rational matrix given as JSON
 * `{"rows": n, "cols": n, "entries": ["p/q", ...]}` (row-major). On success
 * `*out_json` receives `{"codeword": ..., "error": ..., "error_rank": k}`;
 * release it with [`rf_string_free`]. A detected decoding failure returns
 * [`RfStatus::DecodeFailure`] and leaves `*out_json` NULL.
 *
 * # Safety
 * `code` must be a live handle, `received_json` a NUL-terminated string and
 * `out_json` a valid pointer.
 */
enum RfStatus rf_rm_decode(const struct RfRmCode *code, const char *received_json, char **out_json);

/**
 * # Safety
 * `code` must be NULL or a handle from [`rf_rm_code_new`] not yet freed.
 */
void rf_rm_code_free(struct RfRmCode *code);

/**
 * Creates C ⋄ₐ D from Gabidulin codes of dimensions k1 ≥ k2 over GF(q^m),
 * with m = 2·k1 − k2. Codewords are 2m×2m matrices over GF(q).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum RfStatus rf_plotkin_gabidulin_new(uint64_t q,
                                       size_t m,
                                       size_t k1,
                                       size_t k2,
                                       uint64_t a,
                                       struct RfPlotkin **out);

/**
 * Writes the side length 2m, the dimension over GF(q) and the radius.
 *
 * # Safety
 * `code` must be a live handle; the output pointers must be valid or NULL.
 */
enum RfStatus rf_plotkin_params(const struct RfPlotkin *code,
                                size_t *side,
                                size_t *dimension,
                                size_t *radius);

/**
 * Writes a pseudo-random codeword, row-major, into `out[0..len]`, where
 * `len` must equal (2m)². The same seed gives the same codeword.
 *
 * # Safety
 * `code` must be a live handle and `out` must point to `len` writable u64s.
 */
enum RfStatus rf_plotkin_random_codeword(const struct RfPlotkin *code,
                                         uint64_t seed,
                                         uint64_t *out,
                                         size_t len);

/**
 * Decodes the row-major (2m)×(2m) matrix `received` over GF(q) and writes the
 * codeword into `codeword_out`. Entries are reduced mod q. A detected
 * failure returns [`RfStatus::DecodeFailure`] and leaves the output untouched.
 *
 * # Safety
 * `code` must be a live handle; `received` and `codeword_out` must each point
 * to `len` u64s, the latter writable. They may alias.
 */
enum RfStatus rf_plotkin_decode(const struct RfPlotkin *code,
                                const uint64_t *received,
                                uint64_t *codeword_out,
                                size_t len);

/**
 * # Safety
 * `code` must be NULL or a handle from [`rf_plotkin_gabidulin_new`] not yet
 * freed.
 */
void rf_plotkin_free(struct RfPlotkin *code);

/**
 * Estimates how often folding a random rank-t error in GF(q)^{2m×2m} drops
 * its rank, over `trials` seeded trials.
 *
 * # Safety
 * `out` must be a valid pointer to a writable [`RfFoldStats`].
 */
enum RfStatus rf_fold_probability(uint64_t q,
                                  size_t m,
                                  size_t t,
                                  uint64_t a,
                                  uint64_t trials,
                                  uint64_t seed,
                                  struct RfFoldStats *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RANKFOLD_H */
