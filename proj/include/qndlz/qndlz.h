/*
 * Copyright 2026 The qndlz Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QNDLZ_QNDLZ_H_
#define QNDLZ_QNDLZ_H_

/* C interface to the qndlz engine. All functions return a qndlz_status; on failure
 * qndlz_last_error() holds a message for the calling thread. Handles are opaque and
 * released with the matching *_free function. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QNDLZ_BUILDING)
#    define QNDLZ_API __declspec(dllexport)
#  else
#    define QNDLZ_API __declspec(dllimport)
#  endif
#else
#  define QNDLZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qndlz_status {
  QNDLZ_OK = 0,
  QNDLZ_ERR_INVALID_ARGUMENT = 1,
  QNDLZ_ERR_DIMENSION = 2,
  QNDLZ_ERR_CONFIG = 3,
  QNDLZ_ERR_INVARIANT = 4, /* state left the physical region */
  QNDLZ_ERR_VERIFICATION = 5,
  QNDLZ_ERR_IO = 6,
  QNDLZ_ERR_INVALID_HANDLE = 7,
  QNDLZ_ERR_UNKNOWN = 99
} qndlz_status;

QNDLZ_API const char* qndlz_version(void);
QNDLZ_API const char* qndlz_status_string(qndlz_status s);
/* Message of the last failed call on this thread ("" if none). */
QNDLZ_API const char* qndlz_last_error(void);

/* ---- parameters ---- */

typedef struct qndlz_lz_params {
  double g;
  double eps;
} qndlz_lz_params;

typedef struct qndlz_meter_params {
  double omega_c;
  double kappa;
  double n; /* thermal occupancy */
  double x0;
  int n_max;
} qndlz_meter_params;

typedef struct qndlz_window {
  double t_begin;
  double t_end;
} qndlz_window;

typedef struct qndlz_evolve_options {
  double dt;              /* <= 0: automatic step bound */
  double sample_interval; /* <= 0: every step */
  int check_every;        /* spectral check cadence in samples */
  int abort_on_violation; /* nonzero: fail with QNDLZ_ERR_INVARIANT */
} qndlz_evolve_options;

QNDLZ_API void qndlz_evolve_options_default(qndlz_evolve_options* opts);

/* n = 1 / (exp(beta omega_c) - 1) */
QNDLZ_API qndlz_status qndlz_occupancy_from_beta(double beta, double omega_c, double* n);

typedef enum qndlz_gamma_source { QNDLZ_GAMMA_EXPLICIT = 0, QNDLZ_GAMMA_METER = 1 } qndlz_gamma_source;
typedef enum qndlz_profile { QNDLZ_PROFILE_GAP_SQUARED = 0, QNDLZ_PROFILE_CONSTANT = 1 } qndlz_profile;

typedef struct qndlz_dephasing {
  double gamma0;
  double g0_spectral;
  int source;  /* qndlz_gamma_source */
  int profile; /* qndlz_profile */
} qndlz_dephasing;

QNDLZ_API qndlz_status qndlz_dephasing_explicit(const qndlz_lz_params* lz, double gamma0, qndlz_dephasing* out);
QNDLZ_API qndlz_status qndlz_dephasing_from_meter(const qndlz_lz_params* lz, const qndlz_meter_params* m,
                                                  qndlz_dephasing* out);
QNDLZ_API qndlz_status qndlz_dephasing_constant(double gamma, qndlz_dephasing* out);

typedef struct qndlz_ame_options {
  double dt; /* <= 0: piecewise automatic step */
  double sample_interval;
  int abort_on_violation;
} qndlz_ame_options;

QNDLZ_API void qndlz_ame_options_default(qndlz_ame_options* opts);

/* ---- trajectories ---- */

typedef struct qndlz_trajectory qndlz_trajectory;

typedef struct qndlz_sample {
  double t;
  double p;
  double trace_error;
  double hermiticity_error;
  double min_eigenvalue;
  double quadrature; /* NaN when not applicable */
  double meter_tail; /* NaN when not applicable */
} qndlz_sample;

typedef struct qndlz_trajectory_summary {
  size_t samples;
  size_t steps;
  size_t warnings;
  double final_p;
  double max_trace_error;
  double max_hermiticity_error;
  double min_eigenvalue;
  double max_meter_tail;
} qndlz_trajectory_summary;

QNDLZ_API qndlz_status qndlz_trajectory_summarize(const qndlz_trajectory* tr, qndlz_trajectory_summary* out);
QNDLZ_API qndlz_status qndlz_trajectory_sample(const qndlz_trajectory* tr, size_t i, qndlz_sample* out);
/* Borrowed string, valid while the handle lives. NULL when out of range. */
QNDLZ_API const char* qndlz_trajectory_warning(const qndlz_trajectory* tr, size_t i);
/* Mean P over the final `fraction` of the window. */
QNDLZ_API qndlz_status qndlz_trajectory_trailing_average(const qndlz_trajectory* tr, double fraction, double* out);
QNDLZ_API void qndlz_trajectory_free(qndlz_trajectory* tr);

/* ---- closed LZ ---- */

QNDLZ_API qndlz_status qndlz_lz_infidelity_asymptotic(const qndlz_lz_params* lz, double* out);
QNDLZ_API qndlz_status qndlz_lz_infidelity_finite(const qndlz_lz_params* lz, double t1, double t2, double* out);
QNDLZ_API qndlz_status qndlz_coherent_trajectory(const qndlz_lz_params* lz, const qndlz_window* w, double dt,
                                                 double sample_interval, qndlz_trajectory** out);

/* ---- joint qubit + meter ---- */

typedef struct qndlz_continuous_result {
  double t_final;
  double quadrature_at_zero;
  double effective_gap;
} qndlz_continuous_result;

QNDLZ_API qndlz_status qndlz_recommended_lindblad_dt(const qndlz_lz_params* lz, const qndlz_meter_params* m,
                                                     const qndlz_window* w, double* out);
/* `traj` may be NULL when only the scalars are wanted. */
QNDLZ_API qndlz_status qndlz_run_continuous(const qndlz_lz_params* lz, const qndlz_meter_params* m,
                                            const qndlz_window* w, const qndlz_evolve_options* opts,
                                            qndlz_continuous_result* result, qndlz_trajectory** traj);
QNDLZ_API qndlz_status qndlz_effective_gap(const qndlz_lz_params* lz, const qndlz_meter_params* m,
                                           const qndlz_window* w, const qndlz_evolve_options* opts, double* out);

/* C_XX on a non-decreasing tau grid; re/im receive n values each. */
QNDLZ_API qndlz_status qndlz_regression_autocorrelation(const qndlz_meter_params* m, const double* tau, size_t n,
                                                        double dt, double* re, double* im, double* thermal_tail);
QNDLZ_API qndlz_status qndlz_analytic_autocorrelation(const qndlz_meter_params* m, double tau, double* re,
                                                      double* im);
QNDLZ_API qndlz_status qndlz_spectral_g0(const qndlz_meter_params* m, double* out);

/* ---- adiabatic master equation ---- */

QNDLZ_API qndlz_status qndlz_run_ame(const qndlz_lz_params* lz, const qndlz_dephasing* d, const qndlz_window* w,
                                     const qndlz_ame_options* opts, double* t_final, qndlz_trajectory** traj);

typedef struct qndlz_relative_infidelity {
  double delta_t;
  double t_dephased;
  double t_coherent;
  double dt;
} qndlz_relative_infidelity;

QNDLZ_API qndlz_status qndlz_relative_infidelity_run(const qndlz_lz_params* lz, const qndlz_dephasing* d,
                                                     const qndlz_window* w, double dt,
                                                     qndlz_relative_infidelity* out);
QNDLZ_API qndlz_status qndlz_avron_q(double x, double* out);
QNDLZ_API qndlz_status qndlz_asymptotic_infidelity(const qndlz_lz_params* lz, const qndlz_dephasing* d, double* out);

/* ---- non-Markovianity ---- */

typedef struct qndlz_pair_grid {
  int n_theta;
  int n_phi;
  int refine;
  int refine_points;
} qndlz_pair_grid;

QNDLZ_API void qndlz_pair_grid_default(qndlz_pair_grid* grid);

typedef struct qndlz_nm_result qndlz_nm_result;

typedef struct qndlz_nm_summary {
  double n_value;
  double best_theta;
  double best_phi;
  size_t pairs_evaluated;
  size_t samples;
  double max_trace_error;
  double max_hermiticity_error;
  double min_eigenvalue;
  double max_meter_tail;
} qndlz_nm_summary;

QNDLZ_API qndlz_status qndlz_blp_joint(const qndlz_lz_params* lz, const qndlz_meter_params* m, const qndlz_window* w,
                                       const qndlz_evolve_options* opts, const qndlz_pair_grid* grid,
                                       qndlz_nm_result** out);
QNDLZ_API qndlz_status qndlz_blp_ame(const qndlz_lz_params* lz, const qndlz_dephasing* d, const qndlz_window* w,
                                     const qndlz_ame_options* opts, const qndlz_pair_grid* grid,
                                     qndlz_nm_result** out);
QNDLZ_API qndlz_status qndlz_nm_summarize(const qndlz_nm_result* r, qndlz_nm_summary* out);
/* D(t) of the best pair at sample i. */
QNDLZ_API qndlz_status qndlz_nm_sample(const qndlz_nm_result* r, size_t i, double* t, double* d);
QNDLZ_API const char* qndlz_nm_search_space(const qndlz_nm_result* r);
QNDLZ_API void qndlz_nm_free(qndlz_nm_result* r);

/* ---- stroboscopic protocol ---- */

typedef enum qndlz_pulse_convention {
  QNDLZ_PULSE_UNIT_AREA = 0,
  QNDLZ_PULSE_AMPLITUDE_X0 = 1
} qndlz_pulse_convention;

typedef struct qndlz_strobe_params {
  double delta_t;
  double t_p;
  int convention; /* qndlz_pulse_convention */
  int steps_per_pulse;
  double gap_max_dt; /* <= 0: T_P / 50 */
} qndlz_strobe_params;

QNDLZ_API void qndlz_strobe_params_default(qndlz_strobe_params* s);

typedef struct qndlz_strobe_result {
  double t_final;
  double cusp_contrast;
  size_t pulses;
} qndlz_strobe_result;

QNDLZ_API qndlz_status qndlz_run_stroboscopic(const qndlz_lz_params* lz, const qndlz_meter_params* m,
                                              const qndlz_window* w, const qndlz_strobe_params* s,
                                              const qndlz_evolve_options* opts, qndlz_strobe_result* result,
                                              qndlz_trajectory** traj);

typedef struct qndlz_noise {
  double tau;
  int n_it;
  uint64_t seed;
} qndlz_noise;

typedef struct qndlz_mc_result qndlz_mc_result;

typedef struct qndlz_mc_summary {
  size_t samples; /* time samples */
  int n_it;
  uint64_t seed;
  double mean_final;
  double stderr_final;
  double max_trace_error;
  double max_hermiticity_error;
  double min_eigenvalue;
  double max_meter_tail;
} qndlz_mc_summary;

QNDLZ_API qndlz_status qndlz_run_noisy_mc(const qndlz_lz_params* lz, const qndlz_meter_params* m,
                                          const qndlz_window* w, const qndlz_strobe_params* s,
                                          const qndlz_evolve_options* opts, const qndlz_noise* noise, int workers,
                                          qndlz_mc_result** out);
QNDLZ_API qndlz_status qndlz_mc_summarize(const qndlz_mc_result* r, qndlz_mc_summary* out);
QNDLZ_API qndlz_status qndlz_mc_sample(const qndlz_mc_result* r, size_t i, double* t, double* mean_p,
                                       double* stderr_p);
/* Final T of noise realization k. */
QNDLZ_API qndlz_status qndlz_mc_final(const qndlz_mc_result* r, int k, double* out);
QNDLZ_API void qndlz_mc_free(qndlz_mc_result* r);

/* ---- verification suite ---- */

typedef struct qndlz_criterion qndlz_criterion;
typedef struct qndlz_verify_report qndlz_verify_report;

typedef struct qndlz_criterion_info {
  const char* id;
  const char* title;
  int passed;
  double seconds;
  size_t checks;
} qndlz_criterion_info;

typedef struct qndlz_check_info {
  const char* name;
  double measured;
  double bound;
  const char* relation;
  int passed;
  const char* detail;
} qndlz_check_info;

/* Called once per criterion as it completes. The handle is borrowed for the call. */
typedef void (*qndlz_criterion_cb)(const qndlz_criterion* c, void* user);

/* Number of known ids; qndlz_verify_id(i) returns them in execution order. */
QNDLZ_API size_t qndlz_verify_id_count(void);
QNDLZ_API const char* qndlz_verify_id(size_t i);

/* `only`: comma list of ids, "analytic", "acceptance" or "all" (NULL = all). */
QNDLZ_API qndlz_status qndlz_verify_run(const char* only, double dt_scale, int workers, qndlz_criterion_cb cb,
                                        void* user, qndlz_verify_report** out);
QNDLZ_API size_t qndlz_verify_count(const qndlz_verify_report* r);
QNDLZ_API const qndlz_criterion* qndlz_verify_criterion(const qndlz_verify_report* r, size_t i);
QNDLZ_API int qndlz_verify_all_passed(const qndlz_verify_report* r);
/* Borrowed JSON text. */
QNDLZ_API const char* qndlz_verify_json(const qndlz_verify_report* r);
QNDLZ_API void qndlz_verify_free(qndlz_verify_report* r);

QNDLZ_API qndlz_status qndlz_criterion_get(const qndlz_criterion* c, qndlz_criterion_info* out);
QNDLZ_API qndlz_status qndlz_criterion_check(const qndlz_criterion* c, size_t j, qndlz_check_info* out);

#ifdef __cplusplus
}
#endif

#endif /* QNDLZ_QNDLZ_H_ */
