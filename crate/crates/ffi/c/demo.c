/* Solves the equal-cap baseline through the C API and prints both optima.
 * Exits nonzero if any call fails. */
#include <math.h>
#include <stdio.h>

#include "wpcn.h"

static int check(WpcnStatus status, const char *what) {
  if (status != WPCN_STATUS_OK) {
    const char *msg = wpcn_last_error();
    fprintf(stderr, "%s: %s (%s)\n", what, wpcn_status_str(status), msg ? msg : "");
    return 1;
  }
  return 0;
}

int main(void) {
  double sigma2 = 0.0;
  if (check(wpcn_dbm_to_watts(-120.0, &sigma2), "dbm_to_watts")) return 1;

  WpcnParams *params = NULL;
  if (check(wpcn_params_new(sigma2, 0.1, 1e-5, 1e4, 1e-3, 1e-6, 1e-6, &params), "params_new"))
    return 1;

  WpcnComparison cmp;
  if (check(wpcn_compare(params, 0.0, &cmp), "compare")) return 1;
  printf("tau*=%.6f rate_tdd=%.3f beta*=%.6f rate_fdd=%.3f winner=%d\n", cmp.tdd.tau_star,
         cmp.tdd.rate, cmp.fdd.beta_star, cmp.fdd.rate, (int)cmp.winner);

  char *json = wpcn_solve_json(params, 0.0);
  if (json == NULL) return 1;
  wpcn_string_free(json);

  WpcnParams *bad = NULL;
  WpcnStatus st = wpcn_params_new(sigma2, 0.1, 1e-5, 0.0, 1e-3, 1e-6, 1e-6, &bad);
  if (st != WPCN_STATUS_INVALID_PARAMS || bad != NULL) return 1;

  wpcn_params_free(params);
  return fabs(cmp.tdd.rate - cmp.fdd.rate) < 1e-6 * cmp.tdd.rate ? 0 : 1;
}
