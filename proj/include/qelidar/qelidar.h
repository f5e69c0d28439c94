#ifndef QELIDAR_H
#define QELIDAR_H

/* C interface to the entanglement-enhanced lidar simulator. Scenarios are
 * opaque handles built from config text (or per-kind defaults), run into an
 * output directory, and queried for their summary. All functions return
 * qel_status; on failure qel_last_error() carries a message for the calling
 * thread. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qel_status {
  QEL_OK = 0,
  QEL_ASSERTION_FAILURE = 1, /* scenario ran, a configured check failed */
  QEL_CONFIG_ERROR = 2,
  QEL_NUMERICAL_ERROR = 3,
  QEL_INVALID_ARGUMENT = 4,
  QEL_IO_ERROR = 5
} qel_status;

typedef struct qel_scenario qel_scenario;

/* message for the most recent failure on this thread */
const char* qel_last_error(void);

qel_status qel_scenario_create_default(const char* kind, qel_scenario** out);
qel_status qel_scenario_parse(const char* config_text, qel_scenario** out);
qel_status qel_scenario_parse_file(const char* path, qel_scenario** out);
void qel_scenario_free(qel_scenario* s);

const char* qel_scenario_kind(const qel_scenario* s);
qel_status qel_scenario_override_seed(qel_scenario* s, uint64_t seed);
/* sets n_trials for trial-driven kinds and n_episodes for episode-driven */
qel_status qel_scenario_override_trials(qel_scenario* s, uint64_t n);

/* canonical config text; call with *size = 0 to query the needed size */
qel_status qel_scenario_canonical_text(const qel_scenario* s, char* buffer,
                                       size_t* size);

/* runs the scenario, writing records/summary/plot artifacts into out_dir;
 * threads affects scheduling only, never results */
qel_status qel_scenario_run(qel_scenario* s, const char* out_dir, int threads);

/* summary document of the last run (empty before any run) */
const char* qel_scenario_summary(const qel_scenario* s);

/* direct computations */
qel_status qel_biphoton_stats(double sigma_coh, double sigma_cor,
                              double* rms_t, double* rms_w,
                              double* entropy_bits, double* mu_a);
qel_status qel_cr_bounds(double sigma_coh, double sigma_cor, double* dt_min,
                         double* dw_min, double* product_bound,
                         double* commutator);
qel_status qel_sdc_check(double* max_identity_residual, int* decode_failures);

#ifdef __cplusplus
}
#endif

#endif /* QELIDAR_H */
