/* C API for the WRSN charging-schedule library.
 *
 * All handles are opaque; every function returns a wrsn_status unless it is
 * a plain accessor. On failure, wrsn_last_error() describes the problem for
 * the calling thread. Strings returned through char** are heap-allocated and
 * must be released with wrsn_string_free().
 */
#ifndef WRSN_H
#define WRSN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct wrsn_instance wrsn_instance;
typedef struct wrsn_result wrsn_result;

typedef enum wrsn_status {
  WRSN_OK = 0,
  WRSN_ERR_INVALID_ARGUMENT = 1,
  WRSN_ERR_IO = 2,
  WRSN_ERR_INTERNAL = 3
} wrsn_status;

const char* wrsn_version(void);

/* Thread-local message for the most recent failure in this thread. */
const char* wrsn_last_error(void);

void wrsn_string_free(char* s);

/* --- instances ---------------------------------------------------------- */

/* spec_json: {"distribution":"uniform|normal|grid","n":50,"seed":1,
 *             "field_width":500,"alpha":0.5,"e_max":10800,"e_min":540,
 *             "T":7200,                          (optional fixed period)
 *             "e_init_frac":[0.3,1.0],"p_band":[0.8,2.0],
 *             "derived_rates":{"packet_bits":1,"packet_rate":1,
 *                              "comm_range":0,"p_lo":0.8,"p_hi":2.0},
 *             "charger":{"E_MC":108000,"U":5,"P_M":1,"v":5},
 *             "name":"r_50_1"}                   (all fields optional but n/seed)
 */
wrsn_status wrsn_instance_generate(const char* spec_json, wrsn_instance** out);
wrsn_status wrsn_instance_from_json(const char* instance_json, wrsn_instance** out);
wrsn_status wrsn_instance_load(const char* path, wrsn_instance** out);
wrsn_status wrsn_instance_save(const wrsn_instance* instance, const char* path);
wrsn_status wrsn_instance_to_json(const wrsn_instance* instance, char** out_json);
wrsn_status wrsn_instance_clone(const wrsn_instance* instance, wrsn_instance** out);

/* Parameter overrides for sweeps; key is one of
 * U, E_MC, P_M, v, alpha, T, p_mean (rescales all sensor rates to the mean). */
wrsn_status wrsn_instance_override(wrsn_instance* instance, const char* key, double value);

int wrsn_instance_sensor_count(const wrsn_instance* instance);
const char* wrsn_instance_name(const wrsn_instance* instance);
void wrsn_instance_free(wrsn_instance* instance);

/* --- solving ------------------------------------------------------------ */

/* config_json: {"algo":"mlsga|mtbcs|greedy","seed":1,"alpha":0.5,
 *               "path_evals":25000,"time_evals":25000,
 *               "pop_path":100,"pop_time":100,
 *               "crossover_rate":0.9,"mutation_rate":0.05,
 *               "sbx_eta":2,"pm_eta":5,"patience":50,
 *               "greedy_init":true,"cma_transfer":true,"threads":0}
 * Only "algo" is required.
 */
wrsn_status wrsn_solve(const wrsn_instance* instance, const char* config_json,
                       wrsn_result** out);

double wrsn_result_objective(const wrsn_result* result);
double wrsn_result_dead_ratio(const wrsn_result* result);
long wrsn_result_path_evaluations(const wrsn_result* result);
long wrsn_result_time_evaluations(const wrsn_result* result);
double wrsn_result_runtime_seconds(const wrsn_result* result);

/* One results-CSV row (no newline). instance_label names the run's instance,
 * including any override suffix. */
wrsn_status wrsn_result_csv_row(const wrsn_result* result, const char* instance_label,
                                char** out_row);
wrsn_status wrsn_result_trace_csv(const wrsn_result* result, char** out_csv);
wrsn_status wrsn_result_schedule_json(const wrsn_result* result, char** out_json);
wrsn_status wrsn_result_report_json(const wrsn_result* result, char** out_json);
void wrsn_result_free(wrsn_result* result);

/* --- evaluation --------------------------------------------------------- */

/* schedule_json: {"order":[...], "times":[...]} */
wrsn_status wrsn_evaluate(const wrsn_instance* instance, const char* schedule_json,
                          char** out_report_json);

/* Results-CSV header line (no newline). */
const char* wrsn_results_csv_header(void);

#ifdef __cplusplus
}
#endif

#endif /* WRSN_H */
