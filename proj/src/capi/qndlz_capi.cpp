// Copyright 2026 The qndlz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qndlz/qndlz.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/adiabatic_me.hpp"
#include "core/errors.hpp"
#include "core/lz_model.hpp"
#include "core/nonmarkov.hpp"
#include "core/open_dynamics.hpp"
#include "core/operator_core.hpp"
#include "core/strobe.hpp"
#include "core/verify.hpp"

struct qndlz_trajectory {
  qndlz::Trajectory traj;
};

struct qndlz_nm_result {
  qndlz::NMResult result;
};

struct qndlz_mc_result {
  qndlz::MCSummary summary;
  int n_it = 0;
};

struct qndlz_criterion {
  qndlz::CriterionResult result;
};

struct qndlz_verify_report {
  std::vector<qndlz_criterion> criteria;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

qndlz_status fail(qndlz_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

qndlz_status from_code(qndlz::ErrorCode c) {
  switch (c) {
    case qndlz::ErrorCode::Ok: return QNDLZ_OK;
    case qndlz::ErrorCode::InvalidArgument: return QNDLZ_ERR_INVALID_ARGUMENT;
    case qndlz::ErrorCode::DimensionMismatch: return QNDLZ_ERR_DIMENSION;
    case qndlz::ErrorCode::Config: return QNDLZ_ERR_CONFIG;
    case qndlz::ErrorCode::InvariantViolation: return QNDLZ_ERR_INVARIANT;
    case qndlz::ErrorCode::VerificationFailed: return QNDLZ_ERR_VERIFICATION;
    case qndlz::ErrorCode::Io: return QNDLZ_ERR_IO;
    case qndlz::ErrorCode::InvalidHandle: return QNDLZ_ERR_INVALID_HANDLE;
    default: return QNDLZ_ERR_UNKNOWN;
  }
}

// Runs fn and maps any exception onto a status code.
template <class F>
qndlz_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QNDLZ_OK;
  } catch (const qndlz::Error& e) {
    return fail(from_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QNDLZ_ERR_UNKNOWN, "out of memory");
  } catch (const std::exception& e) {
    return fail(QNDLZ_ERR_UNKNOWN, e.what());
  } catch (...) {
    return fail(QNDLZ_ERR_UNKNOWN, "unknown error");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) {
    throw qndlz::InvalidArgument(std::string("null pointer: ") + what);
  }
}

qndlz::LZParams to_lz(const qndlz_lz_params* p) {
  need(p, "lz");
  qndlz::LZParams lz;
  lz.g = p->g;
  lz.eps = p->eps;
  lz.validate();
  return lz;
}

qndlz::MeterParams to_meter(const qndlz_meter_params* p) {
  need(p, "meter");
  qndlz::MeterParams m;
  m.omega_c = p->omega_c;
  m.kappa = p->kappa;
  m.n = p->n;
  m.x0 = p->x0;
  m.n_max = p->n_max;
  m.validate();
  return m;
}

qndlz::Window to_window(const qndlz_window* w) {
  need(w, "window");
  if (!std::isfinite(w->t_begin) || !std::isfinite(w->t_end) || !(w->t_end > w->t_begin)) {
    throw qndlz::InvalidArgument("window: need finite t_begin < t_end");
  }
  return {w->t_begin, w->t_end};
}

qndlz::EvolveOptions to_evolve(const qndlz_evolve_options* o) {
  qndlz::EvolveOptions e;
  if (o != nullptr) {
    e.dt = o->dt;
    e.sample_interval = o->sample_interval;
    e.check_every = o->check_every;
    e.abort_on_violation = o->abort_on_violation != 0;
  }
  return e;
}

qndlz::AmeOptions to_ame(const qndlz_ame_options* o) {
  qndlz::AmeOptions a;
  if (o != nullptr) {
    a.dt = o->dt;
    a.sample_interval = o->sample_interval;
    a.abort_on_violation = o->abort_on_violation != 0;
  }
  return a;
}

qndlz::DephasingModel to_dephasing(const qndlz_dephasing* d) {
  need(d, "dephasing");
  qndlz::DephasingModel m;
  m.gamma0 = d->gamma0;
  m.g0_spectral = d->g0_spectral;
  switch (d->source) {
    case QNDLZ_GAMMA_EXPLICIT: m.source = qndlz::GammaSource::Explicit; break;
    case QNDLZ_GAMMA_METER: m.source = qndlz::GammaSource::Meter; break;
    default: throw qndlz::InvalidArgument("dephasing: unknown source");
  }
  switch (d->profile) {
    case QNDLZ_PROFILE_GAP_SQUARED: m.profile = qndlz::DephasingProfile::GapSquared; break;
    case QNDLZ_PROFILE_CONSTANT: m.profile = qndlz::DephasingProfile::Constant; break;
    default: throw qndlz::InvalidArgument("dephasing: unknown profile");
  }
  m.validate();
  return m;
}

void from_dephasing(const qndlz::DephasingModel& m, qndlz_dephasing* out) {
  out->gamma0 = m.gamma0;
  out->g0_spectral = m.g0_spectral;
  out->source = m.source == qndlz::GammaSource::Meter ? QNDLZ_GAMMA_METER : QNDLZ_GAMMA_EXPLICIT;
  out->profile = m.profile == qndlz::DephasingProfile::Constant ? QNDLZ_PROFILE_CONSTANT : QNDLZ_PROFILE_GAP_SQUARED;
}

qndlz::PairGrid to_grid(const qndlz_pair_grid* g) {
  qndlz::PairGrid grid;
  if (g != nullptr) {
    grid.n_theta = g->n_theta;
    grid.n_phi = g->n_phi;
    grid.refine = g->refine != 0;
    grid.refine_points = g->refine_points;
  }
  if (grid.n_theta < 1 || grid.n_phi < 1 || (grid.refine && grid.refine_points < 2)) {
    throw qndlz::InvalidArgument("pair grid: need n_theta, n_phi >= 1 and refine_points >= 2");
  }
  return grid;
}

qndlz::PulseConvention to_convention(int c) {
  switch (c) {
    case QNDLZ_PULSE_UNIT_AREA: return qndlz::PulseConvention::UnitArea;
    case QNDLZ_PULSE_AMPLITUDE_X0: return qndlz::PulseConvention::AmplitudeX0;
    default: throw qndlz::InvalidArgument("strobe: unknown pulse convention");
  }
}

qndlz::StrobeOptions to_strobe(const qndlz_strobe_params* s, const qndlz_evolve_options* o) {
  qndlz::StrobeOptions so;
  so.evolve = to_evolve(o);
  so.steps_per_pulse = s->steps_per_pulse;
  so.gap_max_dt = s->gap_max_dt;
  if (so.steps_per_pulse < 1) {
    throw qndlz::InvalidArgument("strobe: steps_per_pulse must be >= 1");
  }
  return so;
}

void fill_diag(const qndlz::Trajectory& t, double* trace, double* herm, double* min_eig, double* tail) {
  *trace = t.max_trace_error;
  *herm = t.max_hermiticity_error;
  *min_eig = t.min_eigenvalue;
  *tail = t.max_meter_tail;
}

void emit(qndlz::Trajectory&& t, qndlz_trajectory** out) {
  if (out != nullptr) {
    *out = new qndlz_trajectory{std::move(t)};
  }
}

}  // namespace

extern "C" {

const char* qndlz_version(void) { return QNDLZ_VERSION_STRING; }

const char* qndlz_status_string(qndlz_status s) {
  switch (s) {
    case QNDLZ_OK: return "ok";
    case QNDLZ_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QNDLZ_ERR_DIMENSION: return "dimension mismatch";
    case QNDLZ_ERR_CONFIG: return "configuration error";
    case QNDLZ_ERR_INVARIANT: return "invariant violation";
    case QNDLZ_ERR_VERIFICATION: return "verification failed";
    case QNDLZ_ERR_IO: return "i/o error";
    case QNDLZ_ERR_INVALID_HANDLE: return "invalid handle";
    default: return "unknown error";
  }
}

const char* qndlz_last_error(void) { return g_last_error.c_str(); }

void qndlz_evolve_options_default(qndlz_evolve_options* opts) {
  if (opts == nullptr) return;
  qndlz::EvolveOptions e;
  opts->dt = e.dt;
  opts->sample_interval = e.sample_interval;
  opts->check_every = e.check_every;
  opts->abort_on_violation = e.abort_on_violation ? 1 : 0;
}

void qndlz_ame_options_default(qndlz_ame_options* opts) {
  if (opts == nullptr) return;
  qndlz::AmeOptions a;
  opts->dt = a.dt;
  opts->sample_interval = a.sample_interval;
  opts->abort_on_violation = a.abort_on_violation ? 1 : 0;
}

void qndlz_pair_grid_default(qndlz_pair_grid* grid) {
  if (grid == nullptr) return;
  qndlz::PairGrid g;
  grid->n_theta = g.n_theta;
  grid->n_phi = g.n_phi;
  grid->refine = g.refine ? 1 : 0;
  grid->refine_points = g.refine_points;
}

void qndlz_strobe_params_default(qndlz_strobe_params* s) {
  if (s == nullptr) return;
  qndlz::StrobeOptions so;
  s->delta_t = 1.0;
  s->t_p = 0.1;
  s->convention = QNDLZ_PULSE_AMPLITUDE_X0;
  s->steps_per_pulse = so.steps_per_pulse;
  s->gap_max_dt = so.gap_max_dt;
}

qndlz_status qndlz_occupancy_from_beta(double beta, double omega_c, double* n) {
  return guarded([&] {
    need(n, "n");
    if (!(beta > 0.0) || !(omega_c > 0.0)) {
      throw qndlz::InvalidArgument("occupancy: beta and omega_c must be > 0");
    }
    *n = qndlz::occupancy_from_beta(beta, omega_c);
  });
}

qndlz_status qndlz_dephasing_explicit(const qndlz_lz_params* lz, double gamma0, qndlz_dephasing* out) {
  return guarded([&] {
    need(out, "out");
    auto m = qndlz::DephasingModel::explicit_rate(gamma0, to_lz(lz));
    m.validate();
    from_dephasing(m, out);
  });
}

qndlz_status qndlz_dephasing_from_meter(const qndlz_lz_params* lz, const qndlz_meter_params* m,
                                        qndlz_dephasing* out) {
  return guarded([&] {
    need(out, "out");
    from_dephasing(qndlz::DephasingModel::from_meter(to_meter(m), to_lz(lz)), out);
  });
}

qndlz_status qndlz_dephasing_constant(double gamma, qndlz_dephasing* out) {
  return guarded([&] {
    need(out, "out");
    auto m = qndlz::DephasingModel::constant(gamma);
    m.validate();
    from_dephasing(m, out);
  });
}

qndlz_status qndlz_trajectory_summarize(const qndlz_trajectory* tr, qndlz_trajectory_summary* out) {
  if (tr == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null trajectory");
  return guarded([&] {
    need(out, "out");
    const auto& t = tr->traj;
    out->samples = t.size();
    out->steps = t.steps;
    out->warnings = t.warnings.size();
    out->final_p = t.final_p();
    fill_diag(t, &out->max_trace_error, &out->max_hermiticity_error, &out->min_eigenvalue, &out->max_meter_tail);
  });
}

qndlz_status qndlz_trajectory_sample(const qndlz_trajectory* tr, size_t i, qndlz_sample* out) {
  if (tr == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null trajectory");
  return guarded([&] {
    need(out, "out");
    const auto& t = tr->traj;
    if (i >= t.size()) {
      throw qndlz::InvalidArgument("trajectory sample index out of range");
    }
    out->t = t.times[i];
    out->p = t.p_values[i];
    qndlz::SampleDiagnostics d;
    if (i < t.diagnostics.size()) {
      d = t.diagnostics[i];
    }
    out->trace_error = d.trace_error;
    out->hermiticity_error = d.hermiticity_error;
    out->min_eigenvalue = d.min_eigenvalue;
    out->quadrature = d.quadrature;
    out->meter_tail = d.meter_tail;
  });
}

const char* qndlz_trajectory_warning(const qndlz_trajectory* tr, size_t i) {
  if (tr == nullptr || i >= tr->traj.warnings.size()) return nullptr;
  return tr->traj.warnings[i].c_str();
}

qndlz_status qndlz_trajectory_trailing_average(const qndlz_trajectory* tr, double fraction, double* out) {
  if (tr == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null trajectory");
  return guarded([&] {
    need(out, "out");
    if (!(fraction > 0.0 && fraction <= 1.0)) {
      throw qndlz::InvalidArgument("trailing average: fraction must be in (0, 1]");
    }
    *out = qndlz::trailing_average(tr->traj, fraction);
  });
}

void qndlz_trajectory_free(qndlz_trajectory* tr) { delete tr; }

qndlz_status qndlz_lz_infidelity_asymptotic(const qndlz_lz_params* lz, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = qndlz::lz_infidelity_asymptotic(to_lz(lz));
  });
}

qndlz_status qndlz_lz_infidelity_finite(const qndlz_lz_params* lz, double t1, double t2, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = qndlz::lz_infidelity_finite(t1, t2, to_lz(lz));
  });
}

qndlz_status qndlz_coherent_trajectory(const qndlz_lz_params* lz, const qndlz_window* w, double dt,
                                       double sample_interval, qndlz_trajectory** out) {
  return guarded([&] {
    need(out, "out");
    const auto p = to_lz(lz);
    const auto win = to_window(w);
    if (!(dt > 0.0)) {
      dt = qndlz::recommended_schrodinger_dt(win.t_begin, win.t_end, p);
    }
    emit(qndlz::coherent_trajectory(win, p, dt, sample_interval), out);
  });
}

qndlz_status qndlz_recommended_lindblad_dt(const qndlz_lz_params* lz, const qndlz_meter_params* m,
                                           const qndlz_window* w, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = qndlz::recommended_lindblad_dt(to_window(w), to_lz(lz), to_meter(m));
  });
}

qndlz_status qndlz_run_continuous(const qndlz_lz_params* lz, const qndlz_meter_params* m, const qndlz_window* w,
                                  const qndlz_evolve_options* opts, qndlz_continuous_result* result,
                                  qndlz_trajectory** traj) {
  return guarded([&] {
    need(result, "result");
    auto run = qndlz::run_continuous(to_lz(lz), to_meter(m), to_window(w), to_evolve(opts));
    result->t_final = run.t_final;
    result->quadrature_at_zero = run.quadrature_at_zero;
    result->effective_gap = run.effective_gap;
    emit(std::move(run.trajectory), traj);
  });
}

qndlz_status qndlz_effective_gap(const qndlz_lz_params* lz, const qndlz_meter_params* m, const qndlz_window* w,
                                 const qndlz_evolve_options* opts, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = qndlz::effective_gap(to_lz(lz), to_meter(m), to_window(w), to_evolve(opts));
  });
}

qndlz_status qndlz_regression_autocorrelation(const qndlz_meter_params* m, const double* tau, size_t n, double dt,
                                              double* re, double* im, double* thermal_tail) {
  return guarded([&] {
    need(tau, "tau");
    need(re, "re");
    need(im, "im");
    std::vector<double> grid(tau, tau + n);
    auto c = qndlz::regression_autocorrelation(to_meter(m), grid, dt);
    for (size_t i = 0; i < n; ++i) {
      re[i] = c.values[i].real();
      im[i] = c.values[i].imag();
    }
    if (thermal_tail != nullptr) {
      *thermal_tail = c.thermal_tail;
    }
  });
}

qndlz_status qndlz_analytic_autocorrelation(const qndlz_meter_params* m, double tau, double* re, double* im) {
  return guarded([&] {
    need(re, "re");
    need(im, "im");
    const auto c = qndlz::analytic_autocorrelation(to_meter(m), tau);
    *re = c.real();
    *im = c.imag();
  });
}

qndlz_status qndlz_spectral_g0(const qndlz_meter_params* m, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = qndlz::spectral_g0(to_meter(m));
  });
}

qndlz_status qndlz_run_ame(const qndlz_lz_params* lz, const qndlz_dephasing* d, const qndlz_window* w,
                           const qndlz_ame_options* opts, double* t_final, qndlz_trajectory** traj) {
  return guarded([&] {
    auto run = qndlz::run_ame(to_lz(lz), to_dephasing(d), to_window(w), to_ame(opts));
    if (t_final != nullptr) {
      *t_final = run.t_final;
    }
    emit(std::move(run.trajectory), traj);
  });
}

qndlz_status qndlz_relative_infidelity_run(const qndlz_lz_params* lz, const qndlz_dephasing* d,
                                           const qndlz_window* w, double dt, qndlz_relative_infidelity* out) {
  return guarded([&] {
    need(out, "out");
    const auto r = qndlz::relative_infidelity(to_lz(lz), to_dephasing(d), to_window(w), dt);
    out->delta_t = r.delta_t;
    out->t_dephased = r.t_dephased;
    out->t_coherent = r.t_coherent;
    out->dt = r.dt;
  });
}

qndlz_status qndlz_avron_q(double x, double* out) {
  return guarded([&] {
    need(out, "out");
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw qndlz::InvalidArgument("avron_q: x must be finite and >= 0");
    }
    *out = qndlz::avron_q(x);
  });
}

qndlz_status qndlz_asymptotic_infidelity(const qndlz_lz_params* lz, const qndlz_dephasing* d, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = qndlz::asymptotic_infidelity(to_lz(lz), to_dephasing(d));
  });
}

qndlz_status qndlz_blp_joint(const qndlz_lz_params* lz, const qndlz_meter_params* m, const qndlz_window* w,
                             const qndlz_evolve_options* opts, const qndlz_pair_grid* grid, qndlz_nm_result** out) {
  return guarded([&] {
    need(out, "out");
    auto r = qndlz::blp_measure(to_lz(lz), to_meter(m), to_window(w), to_evolve(opts), to_grid(grid));
    *out = new qndlz_nm_result{std::move(r)};
  });
}

qndlz_status qndlz_blp_ame(const qndlz_lz_params* lz, const qndlz_dephasing* d, const qndlz_window* w,
                           const qndlz_ame_options* opts, const qndlz_pair_grid* grid, qndlz_nm_result** out) {
  return guarded([&] {
    need(out, "out");
    const auto g = to_grid(grid);
    const auto map = qndlz::ame_reduced_map(to_lz(lz), to_dephasing(d), to_window(w), to_ame(opts));
    *out = new qndlz_nm_result{qndlz::blp_from_map(map, g)};
  });
}

qndlz_status qndlz_nm_summarize(const qndlz_nm_result* r, qndlz_nm_summary* out) {
  if (r == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null nm result");
  return guarded([&] {
    need(out, "out");
    const auto& n = r->result;
    out->n_value = n.n_value;
    out->best_theta = n.best_pair.theta;
    out->best_phi = n.best_pair.phi;
    out->pairs_evaluated = n.pairs_evaluated;
    out->samples = n.times.size();
    fill_diag(n.diagnostics, &out->max_trace_error, &out->max_hermiticity_error, &out->min_eigenvalue,
              &out->max_meter_tail);
  });
}

qndlz_status qndlz_nm_sample(const qndlz_nm_result* r, size_t i, double* t, double* d) {
  if (r == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null nm result");
  return guarded([&] {
    need(t, "t");
    need(d, "d");
    if (i >= r->result.times.size()) {
      throw qndlz::InvalidArgument("nm sample index out of range");
    }
    *t = r->result.times[i];
    *d = r->result.d_trajectory[i];
  });
}

const char* qndlz_nm_search_space(const qndlz_nm_result* r) {
  return r == nullptr ? nullptr : r->result.search_space.c_str();
}

void qndlz_nm_free(qndlz_nm_result* r) { delete r; }

qndlz_status qndlz_run_stroboscopic(const qndlz_lz_params* lz, const qndlz_meter_params* m, const qndlz_window* w,
                                    const qndlz_strobe_params* s, const qndlz_evolve_options* opts,
                                    qndlz_strobe_result* result, qndlz_trajectory** traj) {
  return guarded([&] {
    need(s, "strobe");
    need(result, "result");
    const auto p = to_lz(lz);
    const auto meter = to_meter(m);
    const auto win = to_window(w);
    const auto schedule = qndlz::build_schedule(win, s->delta_t, s->t_p, to_convention(s->convention));
    auto t = qndlz::run_stroboscopic(p, meter, schedule, win, to_strobe(s, opts));
    result->t_final = t.final_p();
    result->cusp_contrast = qndlz::cusp_contrast(t, schedule);
    result->pulses = schedule.size();
    emit(std::move(t), traj);
  });
}

qndlz_status qndlz_run_noisy_mc(const qndlz_lz_params* lz, const qndlz_meter_params* m, const qndlz_window* w,
                                const qndlz_strobe_params* s, const qndlz_evolve_options* opts,
                                const qndlz_noise* noise, int workers, qndlz_mc_result** out) {
  return guarded([&] {
    need(s, "strobe");
    need(noise, "noise");
    need(out, "out");
    const auto p = to_lz(lz);
    const auto meter = to_meter(m);
    const auto win = to_window(w);
    qndlz::NoiseSpec spec;
    spec.tau = noise->tau;
    spec.n_it = noise->n_it;
    spec.seed = noise->seed;
    spec.validate();
    const auto schedule = qndlz::build_schedule(win, s->delta_t, s->t_p, to_convention(s->convention));
    auto r = std::make_unique<qndlz_mc_result>();
    r->summary = qndlz::run_noisy_mc(p, meter, schedule, spec, win, to_strobe(s, opts), workers);
    r->n_it = spec.n_it;
    *out = r.release();
  });
}

qndlz_status qndlz_mc_summarize(const qndlz_mc_result* r, qndlz_mc_summary* out) {
  if (r == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null mc result");
  return guarded([&] {
    need(out, "out");
    const auto& s = r->summary;
    out->samples = s.times.size();
    out->n_it = r->n_it;
    out->seed = s.seed;
    out->mean_final = s.mean_final;
    out->stderr_final = s.stderr_final;
    fill_diag(s.diagnostics, &out->max_trace_error, &out->max_hermiticity_error, &out->min_eigenvalue,
              &out->max_meter_tail);
  });
}

qndlz_status qndlz_mc_sample(const qndlz_mc_result* r, size_t i, double* t, double* mean_p, double* stderr_p) {
  if (r == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null mc result");
  return guarded([&] {
    need(t, "t");
    need(mean_p, "mean_p");
    need(stderr_p, "stderr_p");
    const auto& s = r->summary;
    if (i >= s.times.size()) {
      throw qndlz::InvalidArgument("mc sample index out of range");
    }
    *t = s.times[i];
    *mean_p = s.mean_p[i];
    *stderr_p = s.stderr_p[i];
  });
}

qndlz_status qndlz_mc_final(const qndlz_mc_result* r, int k, double* out) {
  if (r == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null mc result");
  return guarded([&] {
    need(out, "out");
    if (k < 0 || static_cast<size_t>(k) >= r->summary.final_t.size()) {
      throw qndlz::InvalidArgument("mc realization index out of range");
    }
    *out = r->summary.final_t[static_cast<size_t>(k)];
  });
}

void qndlz_mc_free(qndlz_mc_result* r) { delete r; }

size_t qndlz_verify_id_count(void) { return qndlz::verification_ids().size(); }

const char* qndlz_verify_id(size_t i) {
  static const std::vector<std::string> ids = qndlz::verification_ids();
  return i < ids.size() ? ids[i].c_str() : nullptr;
}

qndlz_status qndlz_verify_run(const char* only, double dt_scale, int workers, qndlz_criterion_cb cb, void* user,
                              qndlz_verify_report** out) {
  return guarded([&] {
    need(out, "out");
    qndlz::VerifyOptions o;
    if (only != nullptr && *only != '\0') {
      o.only = only;
    }
    if (!(dt_scale > 0.0) || !std::isfinite(dt_scale)) {
      throw qndlz::InvalidArgument("verify: dt_scale must be > 0");
    }
    o.dt_scale = dt_scale;
    o.workers = workers;
    qndlz::CriterionCallback forward;
    if (cb != nullptr) {
      forward = [cb, user](const qndlz::CriterionResult& r) {
        const qndlz_criterion c{r};
        cb(&c, user);
      };
    }
    auto results = qndlz::run_verification(o, forward);
    auto report = std::make_unique<qndlz_verify_report>();
    report->json = qndlz::verification_report_json(results);
    for (auto& r : results) {
      report->criteria.push_back(qndlz_criterion{std::move(r)});
    }
    *out = report.release();
  });
}

size_t qndlz_verify_count(const qndlz_verify_report* r) { return r == nullptr ? 0 : r->criteria.size(); }

const qndlz_criterion* qndlz_verify_criterion(const qndlz_verify_report* r, size_t i) {
  if (r == nullptr || i >= r->criteria.size()) return nullptr;
  return &r->criteria[i];
}

int qndlz_verify_all_passed(const qndlz_verify_report* r) {
  if (r == nullptr) return 0;
  for (const auto& c : r->criteria) {
    if (!c.result.passed) return 0;
  }
  return 1;
}

const char* qndlz_verify_json(const qndlz_verify_report* r) { return r == nullptr ? nullptr : r->json.c_str(); }

void qndlz_verify_free(qndlz_verify_report* r) { delete r; }

qndlz_status qndlz_criterion_get(const qndlz_criterion* c, qndlz_criterion_info* out) {
  if (c == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null criterion");
  return guarded([&] {
    need(out, "out");
    out->id = c->result.id.c_str();
    out->title = c->result.title.c_str();
    out->passed = c->result.passed ? 1 : 0;
    out->seconds = c->result.seconds;
    out->checks = c->result.checks.size();
  });
}

qndlz_status qndlz_criterion_check(const qndlz_criterion* c, size_t j, qndlz_check_info* out) {
  if (c == nullptr) return fail(QNDLZ_ERR_INVALID_HANDLE, "null criterion");
  return guarded([&] {
    need(out, "out");
    if (j >= c->result.checks.size()) {
      throw qndlz::InvalidArgument("check index out of range");
    }
    const auto& k = c->result.checks[j];
    out->name = k.name.c_str();
    out->measured = k.measured;
    out->bound = k.bound;
    out->relation = k.relation.c_str();
    out->passed = k.passed ? 1 : 0;
    out->detail = k.detail.c_str();
  });
}

}  // extern "C"
