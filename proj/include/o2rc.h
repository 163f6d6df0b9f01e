/* o2rc — random-cluster Monte Carlo for circle spin models and the dilute
 * Potts chain.
 *
 * C API of the shared library: opaque handles, integer status codes, and
 * thread-local error messages. Strings returned through char** are heap
 * allocated by the library and must be released with o2rc_string_free.
 */

#ifndef O2RC_H
#define O2RC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define O2RC_API __declspec(dllexport)
#else
#define O2RC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum o2rc_status {
    O2RC_OK = 0,
    O2RC_ERR_INVALID_ARGUMENT = 1,
    O2RC_ERR_DOMAIN = 2,
    O2RC_ERR_FEASIBILITY = 3,
    O2RC_ERR_VERIFICATION = 4,
    O2RC_ERR_CONFIG = 5,
    O2RC_ERR_BUDGET = 6,
    O2RC_ERR_INSUFFICIENT_DATA = 7,
    O2RC_ERR_IO = 8,
    O2RC_ERR_INTERNAL = 9
} o2rc_status;

O2RC_API const char* o2rc_version(void);

/* Message for the last failing call on this thread; empty string if none. */
O2RC_API const char* o2rc_last_error(void);

O2RC_API void o2rc_string_free(char* s);

/* ---- circle kernels (angles in radians, accurate != 0 selects the
 * high-order series used by oracles) ---- */
O2RC_API o2rc_status o2rc_wrapped_heat_kernel(double th1, double th2, double t, int accurate,
                                              double* out);
O2RC_API o2rc_status o2rc_wrapped_heat_kernel_dual(double th1, double th2, double t, int accurate,
                                                   double* out);
O2RC_API o2rc_status o2rc_reflected_kernel_half(double th1, double th2, double t, int accurate,
                                                double* out);
O2RC_API o2rc_status o2rc_reflected_kernel_quarter(double th1, double th2, double t, int accurate,
                                                   double* out);

/* ---- weight functions and bond laws ---- */
typedef struct o2rc_weight o2rc_weight;

O2RC_API o2rc_status o2rc_weight_villain(double t, o2rc_weight** out);
O2RC_API o2rc_status o2rc_weight_xy(double beta, o2rc_weight** out);
O2RC_API void o2rc_weight_free(o2rc_weight* w);
O2RC_API o2rc_status o2rc_weight_eval(const o2rc_weight* w, double th1, double th2, double* out);

/* axis_angle nu: reflection across the line through +-e^{i nu} */
O2RC_API o2rc_status o2rc_single_bond_prob(const o2rc_weight* w, double thx, double thy,
                                           double axis_angle, double* out);
/* marginals p (axis pi/4), q (axis -pi/4) and joint-open probability c */
O2RC_API o2rc_status o2rc_pair_bond_law(const o2rc_weight* w, double thx, double thy, double* p,
                                        double* q, double* c);

/* ---- graphs ---- */
typedef struct o2rc_graph o2rc_graph;

/* bc in {"wired", "free", "torus"} */
O2RC_API o2rc_status o2rc_graph_box(int dim, int side, double t, const char* bc, o2rc_graph** out);
O2RC_API void o2rc_graph_free(o2rc_graph* g);
O2RC_API o2rc_status o2rc_graph_counts(const o2rc_graph* g, int* vertices, int* edges,
                                       int* boundary);
O2RC_API o2rc_status o2rc_graph_serialize(const o2rc_graph* g, char** out_text);
O2RC_API o2rc_status o2rc_graph_deserialize(const char* text, o2rc_graph** out);

/* ---- dilute Potts closed forms ---- */
O2RC_API o2rc_status o2rc_dp_transition_prob(int i, int j, int Q, double lambda, double t,
                                             double* out);
O2RC_API o2rc_status o2rc_dp_transition_density(int i, int j, int Q, double lambda, double t,
                                                double* out);
O2RC_API o2rc_status o2rc_dp_bond_open_prob(int si, int sj, int Q, double lambda, double t,
                                            double* out);
O2RC_API o2rc_status o2rc_dp_fk_limit(double t, int Q, double* beta, double* p);

/* ---- experiments ---- */

/* Canonical default configuration text. */
O2RC_API o2rc_status o2rc_config_default(char** out_text);

/* Parse + validate + canonical serialize (the --dump-config path). */
O2RC_API o2rc_status o2rc_config_normalize(const char* text, char** out_text);

/* Run the experiment described by config_text; files land in out_dir. The
 * summary JSON is returned when summary_json is non-NULL. */
O2RC_API o2rc_status o2rc_simulate(const char* config_text, const char* out_dir,
                                   char** summary_json);

/* Temperature scan; writes sweep.csv under out_dir. */
O2RC_API o2rc_status o2rc_sweep(const char* config_text, const char* out_dir);

/* Deterministic identity suites: "kernels", "bonds", "lemmas", "dilute",
 * "all". Returns O2RC_ERR_VERIFICATION when any residual exceeds its
 * tolerance; the printable report is stored in *report when non-NULL and
 * n_failed receives the failing-check count. */
O2RC_API o2rc_status o2rc_verify(const char* suite, char** report, int* n_failed);

/* Oracle manifest JSON (case id -> value, error bound); also written to
 * out_path when non-NULL. */
O2RC_API o2rc_status o2rc_oracle_manifest(const char* out_path, char** manifest_json);

#ifdef __cplusplus
}
#endif

#endif /* O2RC_H */
