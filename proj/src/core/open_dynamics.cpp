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

#include "core/open_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/errors.hpp"

namespace qndlz {

MeterParams MeterParams::with_beta(double omega_c, double kappa, double beta, double x0, int n_max) {
  MeterParams m;
  m.omega_c = omega_c;
  m.kappa = kappa;
  m.n = occupancy_from_beta(beta, omega_c);
  m.x0 = x0;
  m.n_max = n_max;
  return m;
}

void MeterParams::validate() const {
  if (!(omega_c > 0.0) || !std::isfinite(omega_c)) {
    throw InvalidArgument("MeterParams: omega_c must be > 0");
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw InvalidArgument("MeterParams: kappa must be >= 0");
  }
  if (!(n >= 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("MeterParams: occupancy n must be >= 0");
  }
  if (!std::isfinite(x0)) {
    throw InvalidArgument("MeterParams: x0 must be finite");
  }
  if (n_max < 1) {
    throw InvalidArgument("MeterParams: n_max must be >= 1");
  }
}

CouplingSchedule continuous_schedule(const Window& w) {
  if (w.t_begin < 0.0 && w.t_end > 0.0) {
    return {{w.t_begin, 0.0, 1.0, 0.0}, {0.0, w.t_end, 1.0, 0.0}};
  }
  return {{w.t_begin, w.t_end, 1.0, 0.0}};
}

ComplexMatrix joint_hamiltonian(double t, const LZParams& lz, const MeterParams& m) {
  const int d = m.n_max + 1;
  const ComplexMatrix hs = hamiltonian(t, lz);
  const ComplexMatrix a = annihilation(m.n_max);
  const ComplexMatrix meter_factor = ComplexMatrix::Identity(d, d) + m.x0 * (a + a.adjoint());
  return kron(hs, meter_factor) + kron(ComplexMatrix::Identity(2, 2), m.omega_c * number_op(m.n_max));
}

JointLiouvillian::JointLiouvillian(const LZParams& lz, const MeterParams& m)
    : lz_(lz), m_(m), dim_(m.n_max + 1) {
  m.validate();
  const int d = dim_;
  sq_.resize(d - 1);
  for (int k = 0; k < d - 1; ++k) {
    sq_(k) = std::sqrt(static_cast<double>(k + 1));
  }
  const Eigen::MatrixXd outer = sq_ * sq_.transpose();
  jump_down_ = m.kappa * (m.n + 1.0) * outer;
  jump_up_ = m.kappa * m.n * outer;
  free_diag_.resize(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      // truncated a a^dag has a zero in the top level
      const double up_i = i + 1 < d ? i + 1.0 : 0.0;
      const double up_j = j + 1 < d ? j + 1.0 : 0.0;
      const double re = -0.5 * m.kappa * (m.n + 1.0) * (i + j) - 0.5 * m.kappa * m.n * (up_i + up_j);
      const double im = -m.omega_c * static_cast<double>(i - j);
      free_diag_(i, j) = Complex(re, im);
    }
  }
  for (auto& row : xb_) {
    for (auto& blk : row) {
      blk.resize(d, d);
    }
  }
  for (auto& row : bx_) {
    for (auto& blk : row) {
      blk.resize(d, d);
    }
  }
}

void JointLiouvillian::free_part(const Eigen::Ref<const ComplexMatrix>& b, Eigen::Ref<ComplexMatrix> out) const {
  const int d = dim_;
  out = free_diag_.cwiseProduct(b);
  // a b a^dag: (i, j) <- sqrt(i+1) sqrt(j+1) b(i+1, j+1)
  out.topLeftCorner(d - 1, d - 1) += jump_down_.cwiseProduct(b.bottomRightCorner(d - 1, d - 1));
  // a^dag b a: (i, j) <- sqrt(i) sqrt(j) b(i-1, j-1)
  out.bottomRightCorner(d - 1, d - 1) += jump_up_.cwiseProduct(b.topLeftCorner(d - 1, d - 1));
}

void JointLiouvillian::x_left(const Eigen::Ref<const ComplexMatrix>& b, Eigen::Ref<ComplexMatrix> out) const {
  const int d = dim_;
  out.topRows(d - 1).noalias() = sq_.asDiagonal() * b.bottomRows(d - 1);
  out.row(d - 1).setZero();
  out.bottomRows(d - 1).noalias() += sq_.asDiagonal() * b.topRows(d - 1);
}

void JointLiouvillian::x_right(const Eigen::Ref<const ComplexMatrix>& b, Eigen::Ref<ComplexMatrix> out) const {
  const int d = dim_;
  out.leftCols(d - 1).noalias() = b.rightCols(d - 1) * sq_.asDiagonal();
  out.col(d - 1).setZero();
  out.rightCols(d - 1).noalias() += b.leftCols(d - 1) * sq_.asDiagonal();
}

void JointLiouvillian::apply(const ComplexMatrix& rho, double t, double amplitude, double time_shift,
                             ComplexMatrix& out, bool hermitian) {
  const int d = dim_;
  if (rho.rows() != 2 * d || rho.cols() != 2 * d) {
    throw DimensionMismatch("JointLiouvillian: state dimension does not match the layout");
  }
  out.resize(2 * d, 2 * d);

  // Real symmetric 2x2 qubit factors: ha = H_S(t), hb = amplitude x0 H_S(t + shift).
  const double ha_d = 0.5 * lz_.eps * t;
  const double ha_o = 0.5 * lz_.g;
  const double c = amplitude * m_.x0;
  const double hb_d = c * 0.5 * lz_.eps * (t + time_shift);
  const double hb_o = c * 0.5 * lz_.g;
  const double ha[2][2] = {{ha_d, ha_o}, {ha_o, -ha_d}};
  const double hb[2][2] = {{hb_d, hb_o}, {hb_o, -hb_d}};
  const bool coupled = c != 0.0;

  auto blk = [&](int q, int r) { return rho.block(q * d, r * d, d, d); };
  if (coupled) {
    for (int q = 0; q < 2; ++q) {
      for (int r = 0; r < 2; ++r) {
        x_left(blk(q, r), xb_[q][r]);
        x_right(blk(q, r), bx_[q][r]);
      }
    }
  }

  for (int q = 0; q < 2; ++q) {
    for (int r = 0; r < 2; ++r) {
      if (hermitian && q == 1 && r == 0) {
        continue;
      }
      auto o = out.block(q * d, r * d, d, d);
      free_part(blk(q, r), o);
      // -i ([ha (x) 1, rho] + [hb (x) X, rho]) restricted to block (q, r)
      if (coupled) {
        o.noalias() -= kI * (ha[q][0] * blk(0, r) + ha[q][1] * blk(1, r) - ha[0][r] * blk(q, 0) -
                             ha[1][r] * blk(q, 1) + hb[q][0] * xb_[0][r] + hb[q][1] * xb_[1][r] -
                             hb[0][r] * bx_[q][0] - hb[1][r] * bx_[q][1]);
      } else {
        o.noalias() -= kI * (ha[q][0] * blk(0, r) + ha[q][1] * blk(1, r) - ha[0][r] * blk(q, 0) -
                             ha[1][r] * blk(q, 1));
      }
    }
  }
  if (hermitian) {
    out.block(d, 0, d, d) = out.block(0, d, d, d).adjoint();
  }
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double t, const LZParams& lz, const MeterParams& m) {
  JointLiouvillian l(lz, m);
  ComplexMatrix out;
  l.apply(rho, t, 1.0, 0.0, out, false);
  return out;
}

double recommended_lindblad_dt(const Window& w, const LZParams& lz, const MeterParams& m, double amplitude) {
  const double t_max = std::max(std::abs(w.t_begin), std::abs(w.t_end));
  double rate = std::max({m.kappa * (m.n + 1.0), m.omega_c, gap(t_max, lz)});
  const double coupling = std::abs(amplitude * m.x0);
  if (coupling > 0.0) {
    const double energy = lz.g > 0.0 ? lz.g : gap(t_max, lz);
    rate = std::max(rate, coupling * energy * std::sqrt(static_cast<double>(m.n_max)));
  }
  double dt = 0.02 / rate;
  // RK4 stability: the truncated dissipator has spectral radius ~ kappa (4n + 1) n_max.
  const double stiff = m.kappa * (4.0 * m.n + 1.0) * m.n_max;
  if (stiff > 0.0) {
    dt = std::min(dt, 2.0 / stiff);
  }
  return dt;
}

ComplexMatrix initial_joint_state(double t, const LZParams& lz, const MeterParams& m) {
  const AdiabaticFrame f = adiabatic_frame(t, lz);
  return kron(f.projector(Branch::Minus), thermal_state(m.n, m.n_max));
}

namespace {

double meter_quadrature(const ComplexMatrix& meter_rho) {
  const Eigen::Index d = meter_rho.rows();
  double q = 0.0;
  for (Eigen::Index k = 0; k + 1 < d; ++k) {
    q += std::sqrt(static_cast<double>(k + 1)) * meter_rho(k + 1, k).real();
  }
  return 2.0 * q;
}

std::string describe_violation(double t, const StateCheck& c) {
  std::ostringstream os;
  os << "state invariant violated at t = " << t << ": trace error " << c.trace_error << ", hermiticity error "
     << c.hermiticity_error << ", min eigenvalue " << c.min_eigenvalue
     << " (try a smaller dt or a larger n_max)";
  return os.str();
}

}  // namespace

Trajectory evolve_schedule(const ComplexMatrix& rho0, const CouplingSchedule& schedule, const LZParams& lz,
                           const MeterParams& m, const EvolveOptions& opts, const SampleObserver& observer) {
  lz.validate();
  m.validate();
  const HilbertLayout layout = m.layout();
  if (rho0.rows() != layout.joint_dim() || rho0.cols() != layout.joint_dim()) {
    throw DimensionMismatch("evolve: initial state dimension does not match 2 (n_max + 1)");
  }
  if (schedule.empty()) {
    throw InvalidArgument("evolve: empty coupling schedule");
  }
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    if (!(schedule[s].t_end >= schedule[s].t_begin) ||
        (s > 0 && std::abs(schedule[s].t_begin - schedule[s - 1].t_end) > 1e-12)) {
      throw InvalidArgument("evolve: coupling schedule must be contiguous and ordered");
    }
  }
  const Window w{schedule.front().t_begin, schedule.back().t_end};

  Trajectory traj;
  JointLiouvillian generator(lz, m);
  ComplexMatrix rho = rho0;
  ComplexMatrix k1, k2, k3, k4, tmp;
  SampleClock clock(w.t_begin, opts.sample_interval);
  std::size_t sample_count = 0;
  bool warned_dt = false;

  auto record = [&](double t) {
    const Qubit reduced = partial_trace_meter(rho, layout);
    const double p = transfer_probability(reduced, t, lz);
    if (opts.physical_state) {
      const bool spectral = opts.check_every <= 1 || sample_count % static_cast<std::size_t>(opts.check_every) == 0;
      const StateCheck c = check_state(rho, spectral);
      SampleDiagnostics diag;
      diag.trace_error = c.trace_error;
      diag.hermiticity_error = c.hermiticity_error;
      diag.min_eigenvalue = spectral ? c.min_eigenvalue : traj.min_eigenvalue;
      const ComplexMatrix meter = partial_trace_qubit(rho, layout);
      diag.quadrature = meter_quadrature(meter);
      diag.meter_tail = top_levels_population(meter);
      traj.push(t, p, diag);
      if (opts.abort_on_violation && !c.ok(opts.tolerances)) {
        throw InvariantViolation(describe_violation(t, c));
      }
    } else {
      traj.push(t, p);
    }
    ++sample_count;
    if (observer) {
      observer(t, rho);
    }
  };

  clock.due(w.t_begin);
  record(w.t_begin);
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    const CouplingSegment& seg = schedule[s];
    const double len = seg.t_end - seg.t_begin;
    if (len <= 0.0) {
      continue;
    }
    const double bound = recommended_lindblad_dt(w, lz, m, seg.amplitude);
    double dt = opts.dt > 0.0 ? opts.dt : bound;
    if (opts.dt > 1.0001 * bound && !warned_dt) {
      std::ostringstream os;
      os << "dt = " << opts.dt << " exceeds the recommended bound " << bound;
      traj.warnings.push_back(os.str());
      warned_dt = true;
    }
    dt = std::min(dt, seg.max_dt);
    const long n = steps_for(len, dt);
    const double h = len / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
      const double t = seg.t_begin + static_cast<double>(k) * h;
      generator.apply(rho, t, seg.amplitude, seg.time_shift, k1, opts.physical_state);
      tmp = rho + (0.5 * h) * k1;
      generator.apply(tmp, t + 0.5 * h, seg.amplitude, seg.time_shift, k2, opts.physical_state);
      tmp = rho + (0.5 * h) * k2;
      generator.apply(tmp, t + 0.5 * h, seg.amplitude, seg.time_shift, k3, opts.physical_state);
      tmp = rho + h * k3;
      generator.apply(tmp, t + h, seg.amplitude, seg.time_shift, k4, opts.physical_state);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      ++traj.steps;
      const bool last = k + 1 == n;
      const double t_next = last ? seg.t_end : seg.t_begin + static_cast<double>(k + 1) * h;
      if (clock.due(t_next) || last) {
        record(t_next);
      }
    }
  }
  if (opts.physical_state && traj.max_meter_tail > 1e-6) {
    std::ostringstream os;
    os << "meter truncation: population in the top two Fock levels reached " << traj.max_meter_tail
       << " (> 1e-6); increase n_max";
    traj.warnings.push_back(os.str());
  }
  return traj;
}

Trajectory evolve(const ComplexMatrix& rho0, const Window& w, const LZParams& lz, const MeterParams& m,
                  const EvolveOptions& opts) {
  return evolve_schedule(rho0, continuous_schedule(w), lz, m, opts);
}

ContinuousRun run_continuous(const LZParams& lz, const MeterParams& m, const Window& w,
                             const EvolveOptions& opts) {
  ContinuousRun run;
  run.trajectory = evolve(initial_joint_state(w.t_begin, lz, m), w, lz, m, opts);
  run.t_final = run.trajectory.final_p();
  run.quadrature_at_zero = std::numeric_limits<double>::quiet_NaN();
  run.effective_gap = std::numeric_limits<double>::quiet_NaN();
  if (w.contains(0.0) && !run.trajectory.diagnostics.empty()) {
    const std::size_t i = nearest_sample(run.trajectory, 0.0);
    run.quadrature_at_zero = run.trajectory.diagnostics[i].quadrature;
    run.effective_gap = lz.g * (1.0 + 2.0 * m.x0 * run.quadrature_at_zero);
  }
  return run;
}

double effective_gap(const LZParams& lz, const MeterParams& m, const Window& w, const EvolveOptions& opts) {
  if (!w.contains(0.0)) {
    throw InvalidArgument("effective_gap: the window must straddle t = 0");
  }
  if (w.t_begin == 0.0) {
    return lz.g;  // factorized thermal meter: <a + a^dag> = 0
  }
  // Only the history up to the anticrossing matters.
  const Window head{w.t_begin, 0.0};
  const Trajectory traj = evolve(initial_joint_state(w.t_begin, lz, m), head, lz, m, opts);
  return lz.g * (1.0 + 2.0 * m.x0 * traj.diagnostics.back().quadrature);
}

Autocorrelation regression_autocorrelation(const MeterParams& m, const std::vector<double>& tau_grid, double dt) {
  m.validate();
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (tau_grid[i] < 0.0 || (i > 0 && tau_grid[i] < tau_grid[i - 1])) {
      throw InvalidArgument("regression_autocorrelation: tau grid must be non-negative and sorted");
    }
  }
  Autocorrelation out;
  out.tau = tau_grid;
  out.thermal_tail = thermal_tail(m.n, m.n_max);
  if (out.thermal_tail > 1e-6) {
    out.warnings.push_back("thermal state truncated: tail population " + std::to_string(out.thermal_tail));
  }
  if (dt <= 0.0) {
    dt = 0.005 / std::max({m.omega_c, m.kappa * (m.n + 1.0), 1e-12});
  }

  // The qubit plays no role; reuse the meter kernel with the coupling off.
  const JointLiouvillian kernel(LZParams{0.0, 1.0}, m);
  const ComplexMatrix r0 = thermal_state(m.n, m.n_max);
  const ComplexMatrix a = annihilation(m.n_max);
  const ComplexMatrix ad = a.adjoint();
  ComplexMatrix y1 = a * r0;   // evolves into e^{L tau}(a R0)
  ComplexMatrix y2 = ad * r0;  // evolves into e^{L tau}(a^dag R0)
  const int d = m.n_max + 1;
  ComplexMatrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);

  auto step = [&](ComplexMatrix& y, double h) {
    kernel.free_part(y, k1);
    tmp = y + 0.5 * h * k1;
    kernel.free_part(tmp, k2);
    tmp = y + 0.5 * h * k2;
    kernel.free_part(tmp, k3);
    tmp = y + h * k3;
    kernel.free_part(tmp, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  double tau = 0.0;
  for (double target : tau_grid) {
    const double len = target - tau;
    if (len > 0.0) {
      const long n = steps_for(len, dt);
      const double h = len / static_cast<double>(n);
      for (long k = 0; k < n; ++k) {
        step(y1, h);
        step(y2, h);
      }
      tau = target;
    }
    const Complex c = (ad * y1).trace() + (a * y2).trace();
    out.values.push_back(m.x0 * m.x0 * c);
  }
  return out;
}

}  // namespace qndlz
