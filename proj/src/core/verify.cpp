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

#include "core/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "core/adiabatic_me.hpp"
#include "core/errors.hpp"
#include "core/lz_model.hpp"
#include "core/nonmarkov.hpp"
#include "core/open_dynamics.hpp"
#include "core/parallel.hpp"
#include "core/strobe.hpp"

namespace qndlz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s += (i ? ", " : "") + fmt(xs[i]);
  }
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

CheckResult check(std::string name, double measured, const std::string& relation, double bound,
                  std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.measured = measured;
  c.bound = bound;
  c.relation = relation;
  if (relation == "<=") {
    c.passed = measured <= bound;
  } else if (relation == "<") {
    c.passed = measured < bound;
  } else if (relation == ">=") {
    c.passed = measured >= bound;
  } else if (relation == ">") {
    c.passed = measured > bound;
  } else {
    c.passed = true;  // informational
  }
  c.detail = std::move(detail);
  return c;
}

CheckResult truth(std::string name, bool ok, std::string detail = {}) {
  CheckResult c;
  c.name = std::move(name);
  c.measured = ok ? 1.0 : 0.0;
  c.bound = 1.0;
  c.relation = "==";
  c.passed = ok;
  c.detail = std::move(detail);
  return c;
}

// Single interior maximum: strictly up to it, strictly down after it.
bool single_interior_max(const std::vector<double>& ys) {
  if (ys.size() < 3) {
    return false;
  }
  const auto top = static_cast<std::size_t>(std::max_element(ys.begin(), ys.end()) - ys.begin());
  if (top == 0 || top + 1 == ys.size()) {
    return false;
  }
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    if (i < top && !(ys[i + 1] > ys[i])) {
      return false;
    }
    if (i >= top && !(ys[i + 1] < ys[i])) {
      return false;
    }
  }
  return true;
}

bool strictly_decreasing(const std::vector<double>& ys) {
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    if (!(ys[i + 1] < ys[i])) {
      return false;
    }
  }
  return true;
}

// State-validity bookkeeping for AC12.
struct RunRecord {
  std::string label;
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  double meter_tail = kNaN;
  std::string error;
};

class Suite {
 public:
  explicit Suite(const VerifyOptions& o) : opts_(o) {}

  CriterionResult run(const std::string& id) {
    CriterionResult r;
    r.id = id;
    const auto t0 = Clock::now();
    try {
      if (id == "analytic") {
        analytic(r);
      } else if (id == "ac1") {
        ac1(r);
      } else if (id == "ac2") {
        ac2(r);
      } else if (id == "ac3") {
        ac3(r);
      } else if (id == "ac4") {
        ac4(r);
      } else if (id == "ac5") {
        ac5(r);
      } else if (id == "ac6") {
        ac6(r);
      } else if (id == "ac7") {
        ac7(r);
      } else if (id == "ac8") {
        ac8(r);
      } else if (id == "ac9") {
        ac9(r);
      } else if (id == "ac10") {
        ac10(r);
      } else if (id == "ac11") {
        ac11(r);
      } else if (id == "ac12") {
        ac12(r);
      }
    } catch (const std::exception& e) {
      r.checks.push_back(truth(id + ".completed", false, e.what()));
      record_failure(id, e.what());
    }
    r.seconds = seconds_since(t0);
    r.passed = !r.checks.empty() &&
               std::all_of(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.passed; });
    return r;
  }

 private:
  // ---- run helpers -------------------------------------------------------

  EvolveOptions joint_options(const Window& w, const LZParams& lz, const MeterParams& m,
                              double sample_interval) const {
    EvolveOptions e;
    e.sample_interval = sample_interval;
    e.check_every = 1;
    if (opts_.dt_scale != 1.0) {
      e.dt = opts_.dt_scale * recommended_lindblad_dt(w, lz, m);
    }
    return e;
  }

  AmeOptions ame_options(const Window& w, const LZParams& lz, const DephasingModel& model,
                         double sample_interval) const {
    AmeOptions a;
    a.sample_interval = sample_interval;
    if (opts_.dt_scale != 1.0) {
      a.dt = opts_.dt_scale * recommended_ame_dt(w, lz, model);
    }
    return a;
  }

  double schrodinger_dt(const Window& w, const LZParams& lz) const {
    return opts_.dt_scale * recommended_schrodinger_dt(w.t_begin, w.t_end, lz);
  }

  StrobeOptions strobe_options(const Window& w, const LZParams& lz, const MeterParams& m, double t_p) const {
    StrobeOptions s;
    s.evolve.sample_interval = 0.01;
    s.evolve.check_every = 1;
    if (opts_.dt_scale != 1.0) {
      s.evolve.dt = opts_.dt_scale * recommended_lindblad_dt(w, lz, m);
      s.steps_per_pulse = std::max(1, static_cast<int>(std::lround(20.0 / opts_.dt_scale)));
      s.gap_max_dt = opts_.dt_scale * t_p / 50.0;
    }
    return s;
  }

  void record(const std::string& label, const Trajectory& t, bool meter) {
    RunRecord r;
    r.label = label;
    r.trace_error = t.max_trace_error;
    r.hermiticity_error = t.max_hermiticity_error;
    r.min_eigenvalue = t.min_eigenvalue;
    r.meter_tail = meter ? t.max_meter_tail : kNaN;
    std::lock_guard<std::mutex> lock(mu_);
    runs_.push_back(r);
  }

  void record_failure(const std::string& label, const std::string& what) {
    RunRecord r;
    r.label = label;
    r.error = what;
    std::lock_guard<std::mutex> lock(mu_);
    runs_.push_back(r);
  }

  // ---- criteria ----------------------------------------------------------

  void analytic(CriterionResult& r) {
    r.title = "Formula-level checks";
    const LZParams one{1.0, 1.0};
    r.checks.push_back(check("lz.asymptotic[g2/eps=1]", std::abs(lz_infidelity_asymptotic(one) - 0.20787957635),
                             "<=", 1e-10, "exp(-pi/2)"));
    const LZParams four = LZParams::from_adiabaticity(4.0);
    r.checks.push_back(check("lz.asymptotic[g2/eps=4]",
                             rel(lz_infidelity_asymptotic(four), 1.8674427317079888e-3), "<=", 1e-12));
    r.checks.push_back(check("lz.finite[g=eps=1,t=+-5]", rel(lz_infidelity_finite(-5.0, 5.0, one), 2.0 / 16.0 / 17576.0),
                             "<=", 1e-12, "eps^2/(16 g^4) * 2/26^3"));
    r.checks.push_back(check("avron.q[1]", std::abs(avron_q(1.0) - 0.650645), "<=", 5e-6));
    r.checks.push_back(check("avron.q[0]", std::abs(avron_q(0.0)), "<=", 0.0));
    r.checks.push_back(check("avron.strong_limit[x=1e3]", rel(1e3 * avron_q(1e3), kPi / 2.0), "<=", 5e-3));
    const LZParams twenty = LZParams::from_adiabaticity(20.0);
    r.checks.push_back(check("avron.infidelity[g2/eps=20,gamma0=g]",
                             std::abs(asymptotic_infidelity(twenty, DephasingModel::explicit_rate(twenty.g, twenty)) -
                                      0.0162661),
                             "<=", 1e-6));
    MeterParams m;
    m.omega_c = 1.0;
    m.kappa = 2.0;
    m.x0 = 1.0;
    r.checks.push_back(check("spectral_g0[kappa=2omega_c]", std::abs(spectral_g0(m) - 1.0), "<=", 1e-14));
    m.n = 0.5;
    r.checks.push_back(check("autocorrelation[tau=0]", std::abs(analytic_autocorrelation(m, 0.0) - Complex(2.0, 0.0)),
                             "<=", 1e-14, "x0^2 (2n+1)"));
    r.checks.push_back(check("thermal.occupancy[beta=10]", rel(occupancy_from_beta(10.0, 1.0), 4.5401991009687765e-5),
                             "<=", 1e-12));
    const ComplexMatrix th = thermal_state(occupancy_from_beta(10.0, 1.0), 50);
    r.checks.push_back(check("thermal.ratio[beta=10]", rel(th(1, 1).real() / th(0, 0).real(), std::exp(-10.0)), "<=",
                             1e-10));
    Qubit a = Qubit::Zero();
    a(0, 0) = 1.0;
    Qubit b = Qubit::Zero();
    b(0, 0) = 0.7;
    b(1, 1) = 0.3;
    r.checks.push_back(check("trace_distance[diag]", std::abs(trace_distance(a, b) - 0.3), "<=", 1e-14));
  }

  void ac1(CriterionResult& r) {
    r.title = "Closed-system LZ law over +-20 g/eps";
    const auto t0 = Clock::now();
    for (double s : {0.5, 1.0, 2.0}) {
      const LZParams lz = LZParams::from_adiabaticity(s);
      const Window w = Window::symmetric(20.0 * lz.time_unit());
      const Trajectory traj = coherent_trajectory(w, lz, schrodinger_dt(w, lz));
      record("ac1[g2/eps=" + fmt(s) + "]", traj, false);
      const double avg = trailing_average(traj, 0.1);
      const double law = lz_infidelity_asymptotic(lz);
      r.checks.push_back(check("relative_error[g2/eps=" + fmt(s) + "]", rel(avg, law), "<=", 0.02,
                               "trailing-average T " + fmt(avg) + " vs " + fmt(law)));
    }
    r.checks.push_back(check("runtime_s", seconds_since(t0), "<", 5.0));
  }

  void ac2(CriterionResult& r) {
    r.title = "Finite-window residual vs boundary envelope (g2/eps=1)";
    const LZParams lz{1.0, 1.0};
    const double law = lz_infidelity_asymptotic(lz);
    std::vector<double> residuals;
    for (double s : {5.0, 8.0, 10.0}) {
      const Window w = Window::symmetric(s);
      const Trajectory traj = coherent_trajectory(w, lz, schrodinger_dt(w, lz));
      record("ac2[s=" + fmt(s) + "]", traj, false);
      const double residual = trailing_average(traj, 0.1) - law;
      const double envelope = lz_infidelity_finite(w.t_begin, w.t_end, lz);
      const double ratio = std::abs(residual) / envelope;
      residuals.push_back(std::abs(residual));
      const double factor = std::max(ratio, 1.0 / ratio);
      r.checks.push_back(check("envelope_factor[s=" + fmt(s) + "]", factor, "<=", 3.0,
                               "residual " + fmt(residual) + ", envelope " + fmt(envelope) + ", final-P residual " +
                                   fmt(traj.final_p() - law)));
    }
    r.checks.push_back(truth("residual_grows_as_window_shrinks",
                             residuals[0] > residuals[1] && residuals[1] > residuals[2],
                             "|residual| at s=5,8,10: " + join(residuals)));
  }

  void ac3(CriterionResult& r) {
    r.title = "Decoupling identity x0=0";
    const auto t0 = Clock::now();
    const LZParams lz{1.0, 1.0};
    const Window w = Window::symmetric(5.0);
    for (auto [kappa, n] : {std::pair{0.5, 0.0}, std::pair{5.0, 1.0}}) {
      MeterParams m;
      m.kappa = kappa;
      m.n = n;
      m.x0 = 0.0;
      m.n_max = 50;
      EvolveOptions e = joint_options(w, lz, m, 0.05);
      const double dt = e.dt > 0.0 ? e.dt : recommended_lindblad_dt(w, lz, m);
      const Trajectory joint = evolve(initial_joint_state(w.t_begin, lz, m), w, lz, m, e);
      record("ac3[kappa=" + fmt(kappa) + ",n=" + fmt(n) + "]", joint, true);
      const Trajectory coherent = coherent_trajectory(w, lz, dt, 0.05);
      if (coherent.times.size() != joint.times.size()) {
        throw InvariantViolation("decoupling check: sample grids differ");
      }
      double dev = 0.0;
      for (std::size_t k = 0; k < joint.size(); ++k) {
        dev = std::max(dev, std::abs(joint.p_values[k] - coherent.p_values[k]));
      }
      r.checks.push_back(
          check("max_deviation[kappa=" + fmt(kappa) + ",n=" + fmt(n) + "]", dev, "<=", 1e-6, fmt(joint.size()) + " samples"));
    }
    r.checks.push_back(check("runtime_s", seconds_since(t0), "<", 30.0));
  }

  void ac4(CriterionResult& r) {
    r.title = "Regression autocorrelation vs closed form";
    for (auto [n, kappa] : {std::pair{0.0, 1.0}, std::pair{0.5, 2.0}}) {
      MeterParams m;
      m.omega_c = 1.0;
      m.kappa = kappa;
      m.n = n;
      m.x0 = 1.0;
      m.n_max = 40;
      const std::string tag = "[n=" + fmt(n) + ",kappa=" + fmt(kappa) + "]";
      // pointwise on [0, 10/kappa]
      std::vector<double> grid;
      for (int i = 0; i <= 400; ++i) {
        grid.push_back(10.0 / kappa * i / 400.0);
      }
      const double dt = opts_.dt_scale * 0.005 / std::max({m.omega_c, m.kappa * (m.n + 1.0)});
      const Autocorrelation ac = regression_autocorrelation(m, grid, dt);
      double dev = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        dev = std::max(dev, std::abs(ac.values[i] - analytic_autocorrelation(m, grid[i])));
      }
      r.checks.push_back(check("max_deviation" + tag, dev, "<=", 1e-6));

      // integral of Re C over [0, 40/kappa] by composite Simpson on the regression output
      const int panels = 8000;
      const double tau_max = 40.0 / kappa;
      std::vector<double> fine;
      for (int i = 0; i <= panels; ++i) {
        fine.push_back(tau_max * i / panels);
      }
      const Autocorrelation acf = regression_autocorrelation(m, fine, dt);
      const double h = tau_max / panels;
      double sum = acf.values.front().real() + acf.values.back().real();
      for (int i = 1; i < panels; ++i) {
        sum += (i % 2 ? 4.0 : 2.0) * acf.values[i].real();
      }
      const double integral = sum * h / 3.0;
      const double target = 0.5 * spectral_g0(m);
      r.checks.push_back(check("integral_relative_error" + tag, rel(integral, target), "<=", 1e-4,
                               "int Re C = " + fmt(integral) + " vs G(0)/2 = " + fmt(target)));
    }
  }

  void ac5(CriterionResult& r) {
    r.title = "Adiabatic ME vs joint Lindblad, T(gamma0) via n";
    const auto t0 = Clock::now();
    const LZParams lz{1.0, 1.0};
    const Window w = Window::symmetric(5.0);
    const std::vector<double> occupations = kAc5Occupations;
    std::vector<double> t_joint(occupations.size());
    std::vector<double> t_ame(occupations.size());
    std::vector<double> gammas(occupations.size());
    parallel_for(occupations.size(), opts_.workers, [&](std::size_t i) {
      MeterParams m;
      m.omega_c = 1.0;
      m.kappa = kAc5Kappa;
      m.x0 = 1.0;
      m.n = occupations[i];
      m.n_max = 50;
      const ContinuousRun run = run_continuous(lz, m, w, joint_options(w, lz, m, 0.05));
      record("ac5[n=" + fmt(m.n) + "]", run.trajectory, true);
      t_joint[i] = run.t_final;
      const DephasingModel model = DephasingModel::from_meter(m, lz);
      gammas[i] = model.gamma0;
      const AmeRun ame = run_ame(lz, model, w, ame_options(w, lz, model, 0.05));
      record("ac5.ame[n=" + fmt(m.n) + "]", ame.trajectory, false);
      t_ame[i] = ame.t_final;
    });
    const std::string curve = "gamma0/g = " + join(gammas);
    r.checks.push_back(truth("joint_single_maximum", single_interior_max(t_joint), "T = " + join(t_joint) + "; " + curve));
    r.checks.push_back(truth("ame_single_maximum", single_interior_max(t_ame), "T = " + join(t_ame)));
    for (std::size_t i = 0; i < occupations.size(); ++i) {
      r.checks.push_back(check("relative_difference[gamma0=" + fmt(gammas[i]) + "]", rel(t_ame[i], t_joint[i]), "<=",
                               0.15, "joint " + fmt(t_joint[i]) + ", AME " + fmt(t_ame[i])));
    }
    r.checks.push_back(check("runtime_s", seconds_since(t0), "<", 600.0));
  }

  void ac6(CriterionResult& r) {
    r.title = "Avron asymptotics at g2/eps=20";
    const LZParams lz = LZParams::from_adiabaticity(20.0);
    const Window w = Window::symmetric(20.0 * lz.time_unit());
    for (double x : {0.5, 1.0, 2.0, 50.0}) {
      const DephasingModel model = DephasingModel::explicit_rate(x * lz.g, lz);
      const AmeRun run = run_ame(lz, model, w, ame_options(w, lz, model, 1.0));
      record("ac6[gamma0/g=" + fmt(x) + "]", run.trajectory, false);
      const double target = x == 50.0 ? kPi * lz.eps / (4.0 * model.gamma0 * lz.g) : asymptotic_infidelity(lz, model);
      // constant-rate reference, reported alongside
      const DephasingModel flat = DephasingModel::constant(model.gamma0);
      const double t_flat = run_ame(lz, flat, w, ame_options(w, lz, flat, 1.0)).t_final;
      const std::string law = x == 50.0 ? "pi eps/(4 gamma0 g)" : "(eps/2g^2) Q(gamma0/g)";
      r.checks.push_back(check("relative_error[gamma0/g=" + fmt(x) + "]", rel(run.t_final, target), "<=", 0.10,
                               "T " + fmt(run.t_final) + " vs " + law + " " + fmt(target) +
                                   "; constant-rate reference T " + fmt(t_flat) + " (rel " +
                                   fmt(rel(t_flat, target)) + ")"));
    }
  }

  void ac7(CriterionResult& r) {
    r.title = "Dephasing helps fast drives";
    const LZParams lz{1.0, 1.0};
    const Window w = Window::symmetric(5.0);
    const std::vector<double> grid = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    std::vector<double> dts;
    for (double x : grid) {
      const DephasingModel model = DephasingModel::explicit_rate(x * lz.g, lz);
      const RelativeInfidelity ri =
          relative_infidelity(lz, model, w, opts_.dt_scale * recommended_ame_dt(w, lz, model));
      dts.push_back(ri.delta_t);
    }
    int changes = 0;
    for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
      if ((dts[i] > 0.0) != (dts[i + 1] > 0.0)) {
        ++changes;
      }
    }
    r.checks.push_back(truth("sign_change_positive_to_negative", dts.front() > 0.0 && dts.back() < 0.0 && changes == 1,
                             "gamma0/g = " + join(grid) + "; dT = " + join(dts)));

    const LZParams slow = LZParams::from_adiabaticity(0.9);
    const Window ws = Window::symmetric(5.0 * slow.time_unit());
    const DephasingModel model = DephasingModel::explicit_rate(15.0 * slow.g, slow);
    const AmeRun run = run_ame(slow, model, ws, ame_options(ws, slow, model, 0.05));
    record("ac7[g2/eps=0.9,gamma0=15g]", run.trajectory, false);
    r.checks.push_back(check("infidelity[g2/eps=0.9,gamma0=15g]", run.t_final, "<=", 0.05));
  }

  std::vector<double> continuous_scan(const std::string& tag, const std::vector<MeterParams>& cells) {
    const LZParams lz{1.0, 1.0};
    const Window w = Window::symmetric(5.0);
    std::vector<double> out(cells.size());
    parallel_for(cells.size(), opts_.workers, [&](std::size_t i) {
      const ContinuousRun run = run_continuous(lz, cells[i], w, joint_options(w, lz, cells[i], 0.05));
      record(tag + "[" + std::to_string(i) + "]", run.trajectory, true);
      out[i] = run.t_final;
    });
    return out;
  }

  void ac8(CriterionResult& r) {
    r.title = "Qualitative structure of T(kappa, x0, n)";
    const auto t0 = Clock::now();
    const double n_cold = occupancy_from_beta(10.0, 1.0);
    auto meter = [&](double kappa, double x0, double n) {
      MeterParams m;
      m.omega_c = 1.0;
      m.kappa = kappa;
      m.x0 = x0;
      m.n = n;
      m.n_max = 50;
      return m;
    };
    const double law = lz_infidelity_asymptotic(LZParams{1.0, 1.0});

    // (a) T(kappa) at x0 = 0.5
    const std::vector<double> kappas = {0.1, 0.3, 1.0, 3.0, 10.0};
    std::vector<MeterParams> cells;
    for (double k : kappas) {
      cells.push_back(meter(k, 0.5, n_cold));
    }
    const std::vector<double> ta = continuous_scan("ac8a", cells);
    const auto lo = static_cast<std::size_t>(std::min_element(ta.begin(), ta.end()) - ta.begin());
    bool shape = lo > 0 && lo + 1 < ta.size();
    for (std::size_t i = 0; shape && i + 1 < ta.size(); ++i) {
      shape = i < lo ? ta[i + 1] < ta[i] : ta[i + 1] > ta[i];
    }
    r.checks.push_back(truth("a.local_minimum_then_rise", shape, "kappa = " + join(kappas) + "; T = " + join(ta)));
    r.checks.push_back(check("a.minimum_below_lz", ta[lo], "<", law));

    // (b) T(x0) at kappa = omega_c
    const std::vector<double> x0s = {0.0, 0.5, 1.0, 1.5, 2.0};
    cells.clear();
    for (double x : x0s) {
      cells.push_back(meter(1.0, x, n_cold));
    }
    const std::vector<double> tb = continuous_scan("ac8b", cells);
    const double last_drop = tb[tb.size() - 2] - tb.back();
    double max_drop = 0.0;
    for (std::size_t i = 0; i + 1 < tb.size(); ++i) {
      max_drop = std::max(max_drop, tb[i] - tb[i + 1]);
    }
    r.checks.push_back(truth("b.decreasing", strictly_decreasing(tb), "x0 = " + join(x0s) + "; T = " + join(tb)));
    r.checks.push_back(truth("b.levelling_off", tb.back() > 0.0 && last_drop < max_drop,
                             "last drop " + fmt(last_drop) + " < largest drop " + fmt(max_drop)));

    // (c) T(n) at large kappa, x0 = 1
    const std::vector<double> ns = {0.0, 0.5, 1.0, 1.5, 2.0};
    cells.clear();
    for (double n : ns) {
      cells.push_back(meter(kAc8Kappa, 1.0, n));
    }
    const std::vector<double> tc = continuous_scan("ac8c", cells);
    r.checks.push_back(truth("c.decreasing_in_n", strictly_decreasing(tc),
                             "kappa = " + fmt(kAc8Kappa) + "; n = " + join(ns) + "; T = " + join(tc)));
    r.checks.push_back(check("runtime_s", seconds_since(t0), "<", 1800.0));
  }

  void ac9(CriterionResult& r) {
    r.title = "BLP sanity";
    const LZParams lz{1.0, 1.0};
    const Window w = Window::symmetric(5.0);
    const DephasingModel flat = DephasingModel::constant(0.5 * lz.g);
    const ReducedMap surrogate = ame_reduced_map(lz, flat, w, ame_options(w, lz, flat, 0.0));
    record("ac9.surrogate", surrogate.diagnostics, false);
    r.checks.push_back(check("markovian_surrogate_N", blp_from_map(surrogate).n_value, "<=", 1e-4));

    auto meter = [&](double kappa, double x0) {
      return MeterParams::with_beta(1.0, kappa, 10.0, x0, 50);
    };
    auto measure = [&](const std::string& label, const MeterParams& m) {
      const ReducedMap map = joint_reduced_map(lz, m, w, joint_options(w, lz, m, 0.0));
      record(label, map.diagnostics, true);
      return blp_from_map(map);
    };
    const NMResult decoupled = measure("ac9[x0=0]", meter(1.0, 0.0));
    r.checks.push_back(check("decoupled_N", decoupled.n_value, "<=", 1e-10));
    const NMResult strong = measure("ac9[kappa=0.05,x0=1]", meter(0.05, 1.0));
    const NMResult weak = measure("ac9[kappa=1,x0=0.2]", meter(1.0, 0.2));
    r.checks.push_back(check("corner_ordering", strong.n_value - weak.n_value, ">", 0.0,
                             "N(kappa=0.05,x0=1) = " + fmt(strong.n_value) + ", N(kappa=1,x0=0.2) = " +
                                 fmt(weak.n_value)));
  }

  static MeterParams strobe_meter() {
    MeterParams m;
    m.omega_c = 1.0;
    m.kappa = 2.0;
    m.n = 0.0;
    m.x0 = 10.0;
    m.n_max = 75;
    return m;
  }

  void ac10(CriterionResult& r) {
    r.title = "Stroboscopic suppression";
    const LZParams lz{1.0, 1.0};
    const Window w = Window::symmetric(5.0);
    const MeterParams m = strobe_meter();
    const double t_p = 1.0 / m.x0;
    const std::vector<double> spacings = {2.0, 1.0, 0.5};
    std::vector<double> finals(spacings.size());
    std::vector<double> contrasts(spacings.size());
    parallel_for(spacings.size(), opts_.workers, [&](std::size_t i) {
      const PulseSchedule s = build_schedule(w, spacings[i], t_p);
      const Trajectory traj = run_stroboscopic(lz, m, s, w, strobe_options(w, lz, m, t_p));
      record("ac10[dt=" + fmt(spacings[i]) + "]", traj, true);
      finals[i] = traj.final_p();
      contrasts[i] = cusp_contrast(traj, s);
    });
    const double bare = coherent_trajectory(w, lz, schrodinger_dt(w, lz)).final_p();
    r.checks.push_back(truth("denser_pulses_lower_T", strictly_decreasing(finals),
                             "delta_t = " + join(spacings) + "; T = " + join(finals)));
    r.checks.push_back(check("densest_below_bare_lz", finals.back(), "<", bare, "bare LZ over the window"));
    for (std::size_t i = 0; i < spacings.size(); ++i) {
      r.checks.push_back(check("cusp_contrast[dt=" + fmt(spacings[i]) + "]", contrasts[i], ">=", 2.0));
    }
  }

  void ac11(CriterionResult& r) {
    r.title = "Timing-error robustness";
    const LZParams lz{1.0, 1.0};
    const Window w = Window::symmetric(5.0);
    const MeterParams m = strobe_meter();
    const double t_p = 1.0 / m.x0;
    const PulseSchedule schedule = build_schedule(w, 1.0, t_p);
    StrobeOptions so = strobe_options(w, lz, m, t_p);
    so.evolve.sample_interval = 0.05;
    const Trajectory perfect = run_stroboscopic(lz, m, schedule, w, so);
    record("ac11.perfect", perfect, true);

    NoiseSpec noise{0.1, 50, kAc11Seed};
    const MCSummary mc = run_noisy_mc(lz, m, schedule, noise, w, so, opts_.workers);
    record("ac11.mc[tau=0.1]", mc.diagnostics, true);
    r.checks.push_back(check("mean_final_relative_to_perfect", rel(mc.mean_final, perfect.final_p()), "<=", 0.25,
                             "mean T " + fmt(mc.mean_final) + " +- " + fmt(mc.stderr_final) + " (stderr, n_it=50, seed " +
                                 std::to_string(kAc11Seed) + ") vs perfect " + fmt(perfect.final_p())));
    r.checks.push_back(check("stderr_final", mc.stderr_final, "info", 0.0, "reported"));

    auto max_dev = [&](const MCSummary& s) {
      double d = 0.0;
      for (std::size_t k = 0; k < s.times.size(); ++k) {
        d = std::max(d, std::abs(s.mean_p[k] - perfect.p_values[k]));
      }
      return d;
    };
    std::vector<double> devs;
    const std::vector<double> taus = {0.05, 0.025, 0.0125};
    for (double tau : taus) {
      const MCSummary s = run_noisy_mc(lz, m, schedule, NoiseSpec{tau, 4, kAc11Seed}, w, so, opts_.workers);
      record("ac11.mc[tau=" + fmt(tau) + "]", s.diagnostics, true);
      if (s.times != perfect.times) {
        throw InvariantViolation("noisy and perfect runs use different grids");
      }
      devs.push_back(max_dev(s));
    }
    r.checks.push_back(truth("tau_to_zero_converges", strictly_decreasing(devs),
                             "tau = " + join(taus) + "; max |mean P - perfect P| = " + join(devs)));
  }

  void ac12(CriterionResult& r) {
    r.title = "State validity over all runs";
    const StateTolerances tol;
    std::vector<RunRecord> runs;
    {
      std::lock_guard<std::mutex> lock(mu_);
      runs = runs_;
    }
    double worst_trace = 0.0;
    double worst_herm = 0.0;
    double worst_eig = 0.0;
    double worst_tail = 0.0;
    std::string failed;
    for (const RunRecord& rr : runs) {
      if (!rr.error.empty()) {
        failed += (failed.empty() ? "" : "; ") + rr.label + ": " + rr.error;
        continue;
      }
      worst_trace = std::max(worst_trace, rr.trace_error);
      worst_herm = std::max(worst_herm, rr.hermiticity_error);
      worst_eig = std::min(worst_eig, rr.min_eigenvalue);
      if (!std::isnan(rr.meter_tail)) {
        worst_tail = std::max(worst_tail, rr.meter_tail);
      }
    }
    const std::string n_runs = std::to_string(runs.size()) + " runs";
    r.checks.push_back(truth("runs_completed", failed.empty(), failed.empty() ? n_runs : failed));
    r.checks.push_back(check("max_trace_error", worst_trace, "<=", tol.trace, n_runs));
    r.checks.push_back(check("max_hermiticity_error", worst_herm, "<=", tol.hermiticity));
    r.checks.push_back(check("min_eigenvalue", worst_eig, ">=", tol.positivity));
    r.checks.push_back(check("max_meter_tail", worst_tail, "<", 1e-6));
  }

  static constexpr double kAc5Kappa = 10.0;
  static inline const std::vector<double> kAc5Occupations = {0.0, 0.5, 1.0, 1.5, 2.0};
  static constexpr double kAc8Kappa = 10.0;
  static constexpr std::uint64_t kAc11Seed = 20240601;

  VerifyOptions opts_;
  std::mutex mu_;
  std::vector<RunRecord> runs_;
};

const std::vector<std::string>& all_ids() {
  static const std::vector<std::string> ids = {"analytic", "ac1", "ac2", "ac3", "ac4",  "ac5",  "ac6",
                                               "ac7",      "ac8", "ac9", "ac10", "ac11", "ac12"};
  return ids;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

std::vector<std::string> verification_ids() { return all_ids(); }

std::vector<CriterionResult> run_verification(const VerifyOptions& opts, const CriterionCallback& on_done) {
  if (!(opts.dt_scale > 0.0) || !std::isfinite(opts.dt_scale)) {
    throw InvalidArgument("verify: dt scale must be > 0");
  }
  std::set<std::string> selected;
  std::stringstream ss(lower(opts.only.empty() ? "all" : opts.only));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) {
      continue;
    }
    if (item == "all") {
      selected.insert(all_ids().begin(), all_ids().end());
    } else if (item == "acceptance") {
      selected.insert(all_ids().begin() + 1, all_ids().end());
    } else if (std::find(all_ids().begin(), all_ids().end(), item) != all_ids().end()) {
      selected.insert(item);
    } else {
      throw InvalidArgument("verify: unknown check group '" + item + "'");
    }
  }
  if (selected.empty()) {
    throw InvalidArgument("verify: empty selection");
  }
  // State validity is judged over the runs of the other criteria.
  const bool validity_only = selected.size() == 1 && selected.count("ac12");

  Suite suite(opts);
  std::vector<CriterionResult> out;
  for (const std::string& id : all_ids()) {
    const bool report = selected.count(id) > 0;
    const bool needed = report || (validity_only && id != "analytic");
    if (!needed) {
      continue;
    }
    CriterionResult r = suite.run(id);
    if (report) {
      if (on_done) {
        on_done(r);
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string verification_report_json(const std::vector<CriterionResult>& results) {
  nlohmann::json j;
  j["criteria"] = nlohmann::json::array();
  bool all = true;
  for (const CriterionResult& r : results) {
    nlohmann::json c;
    c["id"] = r.id;
    c["title"] = r.title;
    c["passed"] = r.passed;
    c["seconds"] = r.seconds;
    c["checks"] = nlohmann::json::array();
    for (const CheckResult& k : r.checks) {
      c["checks"].push_back({{"name", k.name},
                             {"measured", k.measured},
                             {"bound", k.bound},
                             {"relation", k.relation},
                             {"passed", k.passed},
                             {"detail", k.detail}});
    }
    all = all && r.passed;
    j["criteria"].push_back(std::move(c));
  }
  j["passed"] = all;
  return j.dump(2);
}

}  // namespace qndlz
