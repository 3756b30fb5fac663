#ifndef WPCN_H
#define WPCN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Bits of the `binding` masks.
 */
#define WPCN_BINDING_PSD_CAP (1 << 0)

#define WPCN_BINDING_POWER_CAP (1 << 1)

#define WPCN_BINDING_TIME_UNIT_INTERVAL (1 << 2)

#define WPCN_BINDING_BANDWIDTH_UNIT_INTERVAL (1 << 3)

#define WPCN_BINDING_INTERIOR (1 << 4)

typedef enum WpcnStatus {
  WPCN_STATUS_OK = 0,
  WPCN_STATUS_NULL_POINTER = 1,
  WPCN_STATUS_INVALID_PARAMS = 2,
  WPCN_STATUS_INVALID_ARGUMENT = 3,
  WPCN_STATUS_NON_FINITE = 4,
  WPCN_STATUS_CONFIG_ERROR = 5,
  WPCN_STATUS_PANIC = 6,
} WpcnStatus;

typedef enum WpcnWinner {
  WPCN_WINNER_TDD = 0,
  WPCN_WINNER_FDD = 1,
  WPCN_WINNER_TIE = 2,
} WpcnWinner;

typedef enum WpcnChannelKind {
  WPCN_CHANNEL_KIND_DETERMINISTIC = 0,
  WPCN_CHANNEL_KIND_EXPONENTIAL = 1,
} WpcnChannelKind;

/**
 * Opaque parameter set.
 */
typedef struct WpcnParams WpcnParams;

typedef struct WpcnTddResult {
  double tau_star;
  double p_d;
  double s_implied;
  double gamma;
  double rate;
  uint32_t binding;
} WpcnTddResult;

typedef struct WpcnFddResult {
  double beta_star;
  double s;
  double p_d;
  double beta_cap;
  double gamma;
  double rate;
  uint32_t binding;
} WpcnFddResult;

typedef struct WpcnComparison {
  struct WpcnTddResult tdd;
  struct WpcnFddResult fdd;
  /**
   * FDD rate over TDD rate; NaN when the TDD rate is zero.
   */
  double rate_ratio;
  enum WpcnWinner winner;
} WpcnComparison;

typedef struct WpcnMonteCarloReport {
  uint64_t n_blocks;
  uint64_t seed;
  double mean_rate_tdd;
  double p5_tdd;
  double p50_tdd;
  double p95_tdd;
  double mean_rate_fdd;
  double p5_fdd;
  double p50_fdd;
  double p95_fdd;
} WpcnMonteCarloReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next `wpcn_*` call on the same thread.
 */
const char *wpcn_last_error(void);

/**
 * Static description of a status code.
 */
const char *wpcn_status_str(enum WpcnStatus status);

/**
 * Creates a parameter handle. Noise power is in watts.
 *
 * # Safety
 * `out` must be a valid pointer to a `WpcnParams *` slot.
 */
enum WpcnStatus wpcn_params_new(double sigma2,
                                double p_max,
                                double s_max,
                                double w0,
                                double t_frame,
                                double h_gain,
                                double g_gain,
                                struct WpcnParams **out);

/**
 * Creates a parameter handle from a TOML config document (same keys as the
 * `wpcn` CLI).
 *
 * # Safety
 * `toml` must be a NUL-terminated string; `out` a valid `WpcnParams *` slot.
 */
enum WpcnStatus wpcn_params_from_toml(const char *toml, struct WpcnParams **out);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `params` must come from `wpcn_params_new`/`wpcn_params_from_toml` and not
 * have been freed.
 */
void wpcn_params_free(struct WpcnParams *params);

/**
 * Replaces the channel power gains of an existing handle.
 *
 * # Safety
 * `params` must be a live handle.
 */
enum WpcnStatus wpcn_params_set_gains(struct WpcnParams *params, double h_gain, double g_gain);

/**
 * # Safety
 * `out` must be a valid `double *`.
 */
enum WpcnStatus wpcn_dbm_to_watts(double level_dbm, double *out);

/**
 * Rate `(1 - x) * w0 * log2(1 + gamma * x / (1 - x))` in bit/s.
 *
 * # Safety
 * `out` must be a valid `double *`.
 */
enum WpcnStatus wpcn_throughput(double gamma, double w0, double x, double *out);

/**
 * Optimal TDD split. `tol = 0` selects the default tolerance.
 *
 * # Safety
 * `params` must be a live handle and `out` a valid pointer.
 */
enum WpcnStatus wpcn_solve_tdd(const struct WpcnParams *params,
                               double tol,
                               struct WpcnTddResult *out);

/**
 * Optimal FDD split. `tol = 0` selects the default tolerance.
 *
 * # Safety
 * `params` must be a live handle and `out` a valid pointer.
 */
enum WpcnStatus wpcn_solve_fdd(const struct WpcnParams *params,
                               double tol,
                               struct WpcnFddResult *out);

/**
 * # Safety
 * `params` must be a live handle and `out` a valid pointer.
 */
enum WpcnStatus wpcn_compare(const struct WpcnParams *params,
                             double tol,
                             struct WpcnComparison *out);

/**
 * Block-fading Monte Carlo with channel means taken from the handle's gains.
 *
 * # Safety
 * `params` must be a live handle and `out` a valid pointer.
 */
enum WpcnStatus wpcn_monte_carlo(const struct WpcnParams *params,
                                 enum WpcnChannelKind kind,
                                 uint64_t n_blocks,
                                 uint64_t seed,
                                 double tol,
                                 struct WpcnMonteCarloReport *out);

/**
 * Solves both schemes and returns the CLI's JSON document, or NULL on error.
 * Free the result with `wpcn_string_free`.
 *
 * # Safety
 * `params` must be a live handle.
 */
char *wpcn_solve_json(const struct WpcnParams *params, double tol);

/**
 * # Safety
 * `s` must come from `wpcn_solve_json` and not have been freed. NULL is ignored.
 */
void wpcn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WPCN_H */
