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

#include "core/adiabatic_me.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"

namespace qndlz {

DephasingModel DephasingModel::explicit_rate(double gamma0, const LZParams& lz) {
  if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
    throw InvalidArgument("dephasing: gamma0 must be >= 0");
  }
  if (gamma0 > 0.0 && !(lz.g > 0.0)) {
    throw InvalidArgument("dephasing: a finite gamma0 needs g > 0");
  }
  DephasingModel d;
  d.gamma0 = gamma0;
  d.g0_spectral = gamma0 > 0.0 ? 2.0 * gamma0 / (lz.g * lz.g) : 0.0;
  d.source = GammaSource::Explicit;
  return d;
}

DephasingModel DephasingModel::from_meter(const MeterParams& m, const LZParams& lz) {
  m.validate();
  DephasingModel d;
  d.g0_spectral = spectral_g0(m);
  d.gamma0 = 0.5 * d.g0_spectral * lz.g * lz.g;
  d.source = GammaSource::Meter;
  return d;
}

DephasingModel DephasingModel::constant(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("dephasing: rate must be >= 0");
  }
  DephasingModel d;
  d.gamma0 = gamma;
  d.profile = DephasingProfile::Constant;
  return d;
}

void DephasingModel::validate() const {
  if (!(gamma0 >= 0.0) || !std::isfinite(gamma0)) {
    throw InvalidArgument("dephasing: gamma0 must be >= 0");
  }
  if (!(g0_spectral >= 0.0) || !std::isfinite(g0_spectral)) {
    throw InvalidArgument("dephasing: G(0) must be >= 0");
  }
  if (profile == DephasingProfile::GapSquared && gamma0 > 0.0 && g0_spectral == 0.0) {
    throw InvalidArgument("dephasing: gamma0 > 0 with G(0) = 0");
  }
}

const char* to_string(GammaSource s) { return s == GammaSource::Explicit ? "explicit" : "meter"; }

const char* to_string(DephasingProfile p) {
  return p == DephasingProfile::GapSquared ? "gap_squared" : "constant";
}

double spectral_g0(const MeterParams& m) {
  if (!(m.kappa >= 0.0)) {
    throw InvalidArgument("spectral_g0: kappa must be >= 0");
  }
  const double half = 0.5 * m.kappa;
  return m.x0 * m.x0 * (2.0 * m.n + 1.0) * m.kappa / (half * half + m.omega_c * m.omega_c);
}

Complex analytic_autocorrelation(const MeterParams& m, double tau) {
  if (tau < 0.0) {
    throw InvalidArgument("autocorrelation: tau must be >= 0");
  }
  const double w = m.omega_c * tau;
  return m.x0 * m.x0 * std::exp(-0.5 * m.kappa * tau) *
         ((m.n + 1.0) * std::exp(Complex(0.0, -w)) + m.n * std::exp(Complex(0.0, w)));
}

double dephasing_rate(double t, const LZParams& lz, const DephasingModel& model) {
  if (model.profile == DephasingProfile::Constant) {
    return model.gamma0;
  }
  const double e = gap(t, lz);
  return 0.5 * model.g0_spectral * e * e;
}

Qubit ame_rhs(const Qubit& rho, double t, const LZParams& lz, const DephasingModel& model) {
  const Qubit h = hamiltonian(t, lz);
  Qubit out = -kI * (h * rho - rho * h);
  const double gamma = dephasing_rate(t, lz, model);
  if (gamma != 0.0) {
    const AdiabaticFrame f = adiabatic_frame(t, lz);
    const Qubit pp = f.projector(Branch::Plus);
    const Qubit pm = f.projector(Branch::Minus);
    out -= gamma * (pm * rho * pp + pp * rho * pm);
  }
  return out;
}

double recommended_ame_dt(const Window& w, const LZParams& lz, const DephasingModel& model) {
  const double t_max = std::max(std::abs(w.t_begin), std::abs(w.t_end));
  double rate = gap(t_max, lz);
  if (model.profile == DephasingProfile::Constant) {
    rate = std::max(rate, model.gamma0);
  } else {
    rate = std::max({rate, dephasing_rate(t_max, lz, model), dephasing_rate(0.0, lz, model)});
  }
  return 0.1 / rate;
}

AmeRun evolve_ame(const Qubit& rho0, const Window& w, const LZParams& lz, const DephasingModel& model,
                  const AmeOptions& opts, const QubitObserver& observer) {
  lz.validate();
  model.validate();
  if (!(w.t_end > w.t_begin)) {
    throw InvalidArgument("evolve_ame: empty window");
  }
  AmeRun run;
  Trajectory& traj = run.trajectory;
  Qubit rho = rho0;
  SampleClock clock(w.t_begin, opts.sample_interval);

  auto record = [&](double t) {
    const double p = transfer_probability(rho, t, lz);
    if (opts.physical_state) {
      const StateCheck c = check_state(rho, true);
      SampleDiagnostics d;
      d.trace_error = c.trace_error;
      d.hermiticity_error = c.hermiticity_error;
      d.min_eigenvalue = c.min_eigenvalue;
      traj.push(t, p, d);
      if (opts.abort_on_violation && !c.ok(opts.tolerances)) {
        std::ostringstream os;
        os << "qubit state invariant violated at t = " << t << ": trace error " << c.trace_error
           << ", min eigenvalue " << c.min_eigenvalue << " (try a smaller dt)";
        throw InvariantViolation(os.str());
      }
    } else {
      traj.push(t, p);
    }
    if (observer) {
      observer(t, rho);
    }
  };

  auto integrate = [&](double t0, double t1, double h_max) {
    const long n = steps_for(t1 - t0, h_max);
    const double h = (t1 - t0) / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
      const double t = t0 + static_cast<double>(k) * h;
      const Qubit k1 = ame_rhs(rho, t, lz, model);
      const Qubit k2 = ame_rhs(rho + 0.5 * h * k1, t + 0.5 * h, lz, model);
      const Qubit k3 = ame_rhs(rho + 0.5 * h * k2, t + 0.5 * h, lz, model);
      const Qubit k4 = ame_rhs(rho + h * k3, t + h, lz, model);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ++traj.steps;
      const bool last = k + 1 == n;
      const double t_next = last ? t1 : t0 + static_cast<double>(k + 1) * h;
      if (clock.due(t_next) || last) {
        record(t_next);
      }
    }
  };

  // With the automatic step, each half of the window is cut into pieces that get
  // their own step from the local rate; gamma(t) grows like t^2 towards the edges.
  auto advance = [&](double t0, double t1) {
    if (opts.dt > 0.0) {
      integrate(t0, t1, opts.dt);
      return;
    }
    constexpr int kPieces = 8;
    for (int i = 0; i < kPieces; ++i) {
      const double a = t0 + (t1 - t0) * i / kPieces;
      const double b = i + 1 == kPieces ? t1 : t0 + (t1 - t0) * (i + 1) / kPieces;
      integrate(a, b, recommended_ame_dt(Window{a, b}, lz, model));
    }
  };

  clock.due(w.t_begin);
  record(w.t_begin);
  if (w.t_begin < 0.0 && w.t_end > 0.0) {
    advance(w.t_begin, 0.0);
    advance(0.0, w.t_end);
  } else {
    advance(w.t_begin, w.t_end);
  }
  run.t_final = traj.final_p();
  run.final_state = rho;
  return run;
}

AmeRun run_ame(const LZParams& lz, const DephasingModel& model, const Window& w, const AmeOptions& opts) {
  const Qubit rho0 = adiabatic_frame(w.t_begin, lz).projector(Branch::Minus);
  return evolve_ame(rho0, w, lz, model, opts);
}

double avron_q(double x) {
  if (!(x >= 0.0)) {
    throw InvalidArgument("avron_q: x must be >= 0");
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  const double r = std::sqrt(1.0 + x * x);
  return 0.5 * std::numbers::pi * x * (2.0 + r) / (r * (r + 1.0) * (r + 1.0));
}

double asymptotic_infidelity(const LZParams& lz, const DephasingModel& model) {
  lz.validate();
  if (!(lz.g > 0.0)) {
    throw InvalidArgument("asymptotic_infidelity: g must be > 0");
  }
  return lz.eps / (2.0 * lz.g * lz.g) * avron_q(model.gamma0 / lz.g);
}

std::vector<std::string> asymptotic_validity_warnings(const LZParams& lz, const DephasingModel& model) {
  std::vector<std::string> out;
  const double s = std::sqrt(lz.eps);
  if (!(lz.g > 3.0 * s)) {
    out.push_back("asymptotic law needs sqrt(eps) << g");
  }
  if (!(model.gamma0 > 3.0 * s)) {
    out.push_back("asymptotic law needs sqrt(eps) << gamma0");
  }
  return out;
}

RelativeInfidelity relative_infidelity(const LZParams& lz, const DephasingModel& model, const Window& w,
                                       double dt) {
  RelativeInfidelity r;
  r.dt = dt > 0.0 ? dt : recommended_ame_dt(w, lz, model);
  AmeOptions opts;
  opts.dt = r.dt;
  opts.sample_interval = w.length();  // only the endpoints matter
  r.t_dephased = run_ame(lz, model, w, opts).t_final;
  DephasingModel coherent = model;
  coherent.gamma0 = 0.0;
  coherent.g0_spectral = 0.0;
  r.t_coherent = run_ame(lz, coherent, w, opts).t_final;
  r.delta_t = r.t_dephased - r.t_coherent;
  return r;
}

}  // namespace qndlz
