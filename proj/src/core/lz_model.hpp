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

#pragma once

// Closed Landau-Zener qubit: H_S(t) = (eps t / 2) sigma_z + (g / 2) sigma_x.

#include <vector>

#include "core/operator_core.hpp"
#include "core/trajectory.hpp"

namespace qndlz {

struct LZParams {
  double g = 1.0;    // gap at the anticrossing
  double eps = 1.0;  // sweep rate

  void validate() const;
  /// Adiabaticity parameter g^2 / eps.
  double adiabaticity() const { return g * g / eps; }
  /// Natural time unit g / eps.
  double time_unit() const { return g / eps; }
  /// Params with the given g^2/eps at fixed eps.
  static LZParams from_adiabaticity(double g2_over_eps, double eps = 1.0);
};

enum class Branch { Plus, Minus };

/// Instantaneous eigenbasis of H_S(t). theta = atan2(g, eps t) in (0, pi), so the
/// eigenvectors are continuous in t and |-> -> |up> as t -> -infinity.
struct AdiabaticFrame {
  double t = 0.0;
  double theta = 0.0;
  Eigen::Vector2d plus_state;
  Eigen::Vector2d minus_state;
  double e_plus = 0.0;
  double e_minus = 0.0;

  Qubit projector(Branch b) const;
};

Qubit hamiltonian(double t, const LZParams& p);
double gap(double t, const LZParams& p);  // E_+ - E_-
AdiabaticFrame adiabatic_frame(double t, const LZParams& p);

/// exp(-pi g^2 / (2 eps)).
double lz_infidelity_asymptotic(const LZParams& p);

/// Leading boundary terms of the finite-window transition probability.
double lz_infidelity_finite(double t1, double t2, const LZParams& p);
/// True when both window edges satisfy eps |t| >= g.
bool lz_finite_formula_valid(double t1, double t2, const LZParams& p);

/// Largest step recommended for coherent RK4 propagation over [t1, t2].
double recommended_schrodinger_dt(double t1, double t2, const LZParams& p);

struct SchrodingerRun {
  std::vector<double> times;
  std::vector<QubitVector> states;
  double max_norm_drift = 0.0;
};

/// Fixed-step RK4 on i d/dt psi = H_S(t) psi. Throws InvariantViolation if the norm
/// drifts by more than 1e-8 over the window.
SchrodingerRun propagate_schrodinger(const QubitVector& psi0, double t1, double t2, const LZParams& p,
                                     double dt, double sample_interval = 0.0);

/// Coherent transfer probability P(t) starting from |->_{t1}. The grid matches the joint
/// engine: split at t = 0, one sample clock, forced samples at segment ends.
Trajectory coherent_trajectory(const Window& w, const LZParams& p, double dt, double sample_interval = 0.0);

/// P = <+|rho|+>_t.
double transfer_probability(const Qubit& rho, double t, const LZParams& p);

/// mu_a(t, t') = int_{t'}^{t} E_a(tau) dtau. The geometric term vanishes for the real
/// eigenvectors used here.
double accumulated_phase(Branch b, double t_prime, double t, const LZParams& p);

/// Geometric connection <a(t)| d/dt a(t)>, identically zero for this frame.
double geometric_connection(Branch b, double t, const LZParams& p);

/// First-order adiabatic-perturbation amplitude alpha_{+-}(t, t').
Complex apt_alpha(double t_prime, double t, const LZParams& p);
/// alpha_{-+}(t, t') = -conj(alpha_{+-}(t, t')).
Complex apt_alpha_minus_plus(double t_prime, double t, const LZParams& p);

}  // namespace qndlz
