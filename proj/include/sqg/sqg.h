/* C interface to the spherical SQG core.  All entry points return a status
 * code; on failure sqg_last_error() describes the problem for the calling
 * thread.  Handles are opaque and must be released with their free function.
 */
#ifndef SQG_SQG_H
#define SQG_SQG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqg_status {
  SQG_OK = 0,
  SQG_INVALID_ARGUMENT = 1,
  SQG_PRECONDITION = 2,
  SQG_CFL_VIOLATION = 3,
  SQG_IO_FAILURE = 4,
  SQG_BAD_MAGIC = 5,
  SQG_BAD_VERSION = 6,
  SQG_TRUNCATED = 7,
  SQG_INTERNAL = 8
} sqg_status;

/* Message for the most recent failure on this thread; never NULL. */
const char* sqg_last_error(void);

const char* sqg_version(void);

/* ---- configuration ---------------------------------------------------- */

typedef struct sqg_config {
  int l_max;
  double dt;
  double t_end;
  double alpha;
  double nu;
  double dealias;
  int sample_every;
  unsigned long long seed;
} sqg_config;

void sqg_config_defaults(sqg_config* cfg);

/* Apply one key=value pair (same keys as the config file, except "ic"). */
sqg_status sqg_config_set(sqg_config* cfg, const char* key, const char* value);

/* Load a key=value file.  If the file names an initial condition it is
 * copied into ic_buf (when non-NULL). */
sqg_status sqg_config_load(const char* path, sqg_config* cfg, char* ic_buf, size_t ic_buf_len);

/* ---- simulation ------------------------------------------------------- */

typedef struct sqg_run_result {
  double final_time;
  double final_l2;
  double final_linf;
  double final_grad_sup;
  /* Max-node error against the analytic decay solution; NaN unless the
   * initial condition is a zonal harmonic. */
  double zonal_error;
} sqg_run_result;

/* Run to t_end.  Optional outputs: telemetry CSV, final-state snapshot,
 * JSON manifest listing the emitted files with checksums.  On a CFL abort
 * the last consistent state is written to snapshot_path (when given) before
 * returning SQG_CFL_VIOLATION. */
sqg_status sqg_run(const sqg_config* cfg, const char* initial_condition,
                   const char* telemetry_path, const char* snapshot_path,
                   const char* manifest_path, sqg_run_result* result);

/* ---- snapshots (opaque state handle) ----------------------------------- */

typedef struct sqg_state sqg_state;

sqg_status sqg_state_read(const char* path, sqg_state** out);
sqg_status sqg_state_write(const sqg_state* s, const char* path);
void sqg_state_free(sqg_state* s);

int sqg_state_lmax(const sqg_state* s);
double sqg_state_time(const sqg_state* s);
double sqg_state_alpha(const sqg_state* s);
unsigned long long sqg_state_step(const sqg_state* s);

/* Telemetry-row quantities of a stored state, in CSV column order:
 * time, l2, linf, grad_sup, h1, h1_5, h2, h3, maxpoint_lambda. */
sqg_status sqg_state_diagnostics(const sqg_state* s, double out[9]);

/* ---- verification and operator comparison ------------------------------ */

/* Called once per criterion; return nonzero to stop early. */
typedef int (*sqg_criterion_cb)(int index, const char* name, int passed, const char* detail,
                                void* user);

/* Runs the acceptance suite; *failures receives the number of failed
 * criteria.  quick != 0 shortens the simulated horizons. */
sqg_status sqg_verify(int quick, sqg_criterion_cb cb, void* user, int* failures);

typedef struct sqg_operators_row {
  int quad_lmax;
  double semigroup_rel_err;
  double singular_rel_err;
} sqg_operators_row;

/* Three-way operator agreement on a degree-`degree` harmonic; rows has
 * space for n entries, one per quadrature truncation in quad_ls. */
sqg_status sqg_operators(double alpha, int degree, const int* quad_ls, int n,
                         sqg_operators_row* rows);

typedef struct sqg_twin_result {
  double final_distance;
  double gronwall_rate;
  double floor;
  int within_envelope;
} sqg_twin_result;

/* Twin-run uniqueness comparison; configs may differ in l_max or nu only.
 * When csv_path is non-NULL a time,distance series is written there. */
sqg_status sqg_twin(const sqg_config* a, const sqg_config* b, const char* initial_condition,
                    const char* csv_path, sqg_twin_result* result);

#ifdef __cplusplus
}
#endif

#endif /* SQG_SQG_H */
