/*
 * shockwave - shock formation simulator for the spherically symmetric
 * quasilinear wave equation -(1+(dt phi)^p) dt^2 phi + Laplace phi = 0
 * with short-pulse initial data.
 *
 * C interface over the simulation core. All entry points return an
 * sw_status; on failure sw_last_error() describes the problem. Handles
 * are opaque and freed with their matching *_free function. The library
 * keeps no global state besides the thread-local error message; distinct
 * handles may be used from distinct threads concurrently.
 */

#ifndef SHOCKWAVE_H
#define SHOCKWAVE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum sw_status {
    SW_OK = 0,
    SW_ERR_CONFIG = 2,       /* bad config file, key, value, or output path */
    SW_ERR_NUMERIC = 3,      /* hyperbolicity loss, NaN, degenerate data */
    SW_ERR_PRECONDITION = 4  /* an operation precondition was violated */
} sw_status;

typedef struct sw_config sw_config;
typedef struct sw_report sw_report;

const char* sw_version(void);

/* Message for the most recent failure on this thread. */
const char* sw_last_error(void);

/*
 * Load a "key = value" config file and apply "key=value" overrides in
 * order. The resolved configuration is validated.
 */
sw_status sw_config_load(const char* path, const char* const* overrides, size_t n_overrides,
                         sw_config** out);

/* Apply one more assignment (revalidates). */
sw_status sw_config_set(sw_config* config, const char* key, const char* value);

void sw_config_free(sw_config* config);

/*
 * Commands. Each writes its artifacts under output.dir and returns a
 * report handle carrying a printable text summary plus named scalar
 * metrics. A non-NULL report is produced only on SW_OK.
 *
 *   check_data  - shock margin and outgoing-constraint exponent fits
 *   run         - single evolution with fan tracking and detection
 *   sweep       - delta/p sweep with blow-up exponent fit
 *   predict     - closed-form prediction only (no evolution)
 *   compare     - mu_ode vs mu_jac vs closed-form asymptotic
 *   convergence - grid refinement study (levels >= 3)
 */
sw_status sw_cmd_check_data(const sw_config* config, sw_report** out);
sw_status sw_cmd_run(const sw_config* config, sw_report** out);
sw_status sw_cmd_sweep(const sw_config* config, sw_report** out);
sw_status sw_cmd_predict(const sw_config* config, sw_report** out);
sw_status sw_cmd_compare(const sw_config* config, sw_report** out);
sw_status sw_cmd_convergence(const sw_config* config, int levels, sw_report** out);

const char* sw_report_text(const sw_report* report);

/* Fetch a named metric; SW_ERR_PRECONDITION if the report lacks it. */
sw_status sw_report_metric(const sw_report* report, const char* name, double* out);

/* Number of metrics and name-by-index access, for enumeration. */
size_t sw_report_metric_count(const sw_report* report);
const char* sw_report_metric_name(const sw_report* report, size_t index);

void sw_report_free(sw_report* report);

#ifdef __cplusplus
}
#endif

#endif /* SHOCKWAVE_H */
