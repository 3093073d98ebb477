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

// Markovian limit of the meter: the qubit alone under
//   d rho/dt = -i[H_S, rho] - gamma(t) (P_- rho P_+ + P_+ rho P_-)
// with gamma(t) = G(0) (E_+ - E_-)^2 / 2. The Lamb-shift term is left out.

#include <string>
#include <vector>

#include "core/lz_model.hpp"
#include "core/open_dynamics.hpp"
#include "core/trajectory.hpp"

namespace qndlz {

enum class GammaSource { Explicit, Meter };

/// GapSquared follows the instantaneous-basis projection; Constant keeps gamma(t) = gamma0
/// and is used as a Markovian reference.
enum class DephasingProfile { GapSquared, Constant };

struct DephasingModel {
  double gamma0 = 0.0;       // rate at the anticrossing
  double g0_spectral = 0.0;  // G(0)
  GammaSource source = GammaSource::Explicit;
  DephasingProfile profile = DephasingProfile::GapSquared;

  /// gamma0 given directly; G(0) = 2 gamma0 / g^2.
  static DephasingModel explicit_rate(double gamma0, const LZParams& lz);
  /// G(0) from the meter parameters, gamma0 = G(0) g^2 / 2.
  static DephasingModel from_meter(const MeterParams& m, const LZParams& lz);
  /// gamma(t) = gamma for all t.
  static DephasingModel constant(double gamma);

  void validate() const;
};

const char* to_string(GammaSource s);
const char* to_string(DephasingProfile p);

/// G(0) = x0^2 (2n + 1) kappa / ((kappa/2)^2 + omega_c^2)
double spectral_g0(const MeterParams& m);

/// C_XX(tau) = x0^2 e^{-kappa tau/2} [(n+1) e^{-i omega_c tau} + n e^{i omega_c tau}]
Complex analytic_autocorrelation(const MeterParams& m, double tau);

double dephasing_rate(double t, const LZParams& lz, const DephasingModel& model);

Qubit ame_rhs(const Qubit& rho, double t, const LZParams& lz, const DephasingModel& model);

/// 0.1 / max(gap, gamma) over the window. With AmeOptions::dt <= 0 evolve_ame applies it
/// piecewise on eight sub-intervals per side of t = 0.
double recommended_ame_dt(const Window& w, const LZParams& lz, const DephasingModel& model);

struct AmeOptions {
  double dt = 0.0;
  double sample_interval = 0.0;  // <= 0 stores every step
  bool abort_on_violation = true;
  bool physical_state = true;  // false skips state checks (operator-valued inputs)
  StateTolerances tolerances{1e-10, 1e-10, -1e-8};
};

using QubitObserver = std::function<void(double t, const Qubit& rho)>;

struct AmeRun {
  Trajectory trajectory;
  double t_final = 0.0;
  Qubit final_state;
};

AmeRun evolve_ame(const Qubit& rho0, const Window& w, const LZParams& lz, const DephasingModel& model,
                  const AmeOptions& opts = {}, const QubitObserver& observer = {});

/// evolve_ame from |->_{t_begin}.
AmeRun run_ame(const LZParams& lz, const DephasingModel& model, const Window& w, const AmeOptions& opts = {});

/// Q(x) = (pi/2) x (2 + sqrt(1+x^2)) / (sqrt(1+x^2) (sqrt(1+x^2) + 1)^2)
double avron_q(double x);

/// T = (eps / 2 g^2) Q(gamma0 / g)
double asymptotic_infidelity(const LZParams& lz, const DephasingModel& model);

/// Advisory only: sqrt(eps) well below g and gamma0.
std::vector<std::string> asymptotic_validity_warnings(const LZParams& lz, const DephasingModel& model);

struct RelativeInfidelity {
  double delta_t = 0.0;  // T - T_LZ
  double t_dephased = 0.0;
  double t_coherent = 0.0;
  double dt = 0.0;
};

/// Both runs share the window and the step.
RelativeInfidelity relative_infidelity(const LZParams& lz, const DephasingModel& model, const Window& w,
                                       double dt = 0.0);

}  // namespace qndlz
