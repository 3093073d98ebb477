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

// Joint qubit + damped-oscillator dynamics:
//   H(t) = H_S(t) (x) (1 + x0 (a + a^dag)) + 1 (x) omega_c a^dag a
//   d rho/dt = -i[H, rho] + kappa (n+1) D[a] rho + kappa n D[a^dag] rho

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "core/lz_model.hpp"
#include "core/operator_core.hpp"
#include "core/trajectory.hpp"

namespace qndlz {

struct MeterParams {
  double omega_c = 1.0;
  double kappa = 1.0;
  double n = 0.0;  // thermal occupancy of the bath
  double x0 = 0.0;
  int n_max = 50;

  static MeterParams with_beta(double omega_c, double kappa, double beta, double x0, int n_max);
  void validate() const;
  HilbertLayout layout() const { return {n_max}; }
};

/// Interval on which the QND term reads amplitude * x0 (a + a^dag) (x) H_S(t + time_shift).
/// Amplitude 0 switches the coupling off.
struct CouplingSegment {
  double t_begin = 0.0;
  double t_end = 0.0;
  double amplitude = 1.0;
  double time_shift = 0.0;
  double max_dt = std::numeric_limits<double>::infinity();
};

using CouplingSchedule = std::vector<CouplingSegment>;

/// Always-on coupling over the window; split at t = 0 when the window straddles it
/// so that a sample lands exactly on the anticrossing.
CouplingSchedule continuous_schedule(const Window& w);

/// Dense joint Hamiltonian built from tensor products.
ComplexMatrix joint_hamiltonian(double t, const LZParams& lz, const MeterParams& m);

/// Structured evaluator of the joint Lindblad generator. The meter operators are
/// banded, so each application costs O(meter_dim^2) instead of dense products.
/// Holds scratch buffers: one instance per run.
class JointLiouvillian {
 public:
  JointLiouvillian(const LZParams& lz, const MeterParams& m);

  /// out = L(t) rho. `hermitian` lets the lower off-diagonal block be filled by adjoint.
  void apply(const ComplexMatrix& rho, double t, double amplitude, double time_shift, ComplexMatrix& out,
             bool hermitian = true);

  /// Meter-only part on one block: -i omega_c [N, b] + kappa (n+1) D[a] b + kappa n D[a^dag] b.
  void free_part(const Eigen::Ref<const ComplexMatrix>& b, Eigen::Ref<ComplexMatrix> out) const;
  /// out = (a + a^dag) b
  void x_left(const Eigen::Ref<const ComplexMatrix>& b, Eigen::Ref<ComplexMatrix> out) const;
  /// out = b (a + a^dag)
  void x_right(const Eigen::Ref<const ComplexMatrix>& b, Eigen::Ref<ComplexMatrix> out) const;

  int meter_dim() const { return dim_; }

 private:
  LZParams lz_;
  MeterParams m_;
  int dim_;
  Eigen::VectorXd sq_;  // sqrt(k + 1), k = 0..dim-2
  ComplexMatrix free_diag_;
  Eigen::MatrixXd jump_down_;  // kappa (n+1) sqrt(i+1) sqrt(j+1)
  Eigen::MatrixXd jump_up_;    // kappa n sqrt(i+1) sqrt(j+1)
  ComplexMatrix xb_[2][2];
  ComplexMatrix bx_[2][2];
};

/// L(t) rho for the always-on coupling.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, double t, const LZParams& lz, const MeterParams& m);

/// Step bound 0.02 min(1/(kappa (n+1)), 1/omega_c, 1/gap(t_max), 1/(amplitude x0 g sqrt(n_max))),
/// further capped at 2 / (kappa (4n + 1) n_max) for RK4 stability on the truncated dissipator.
double recommended_lindblad_dt(const Window& w, const LZParams& lz, const MeterParams& m,
                               double amplitude = 1.0);

/// |->_{t}<-| (x) thermal(n).
ComplexMatrix initial_joint_state(double t, const LZParams& lz, const MeterParams& m);

struct EvolveOptions {
  double dt = 0.0;               // <= 0 selects recommended_lindblad_dt per segment
  double sample_interval = 0.0;  // <= 0 stores every step
  int check_every = 1;           // spectral positivity check cadence, in samples
  bool abort_on_violation = true;
  bool physical_state = true;  // false for operator-valued propagation (no state checks)
  StateTolerances tolerances;
};

using SampleObserver = std::function<void(double t, const ComplexMatrix& rho)>;

Trajectory evolve_schedule(const ComplexMatrix& rho0, const CouplingSchedule& schedule, const LZParams& lz,
                           const MeterParams& m, const EvolveOptions& opts = {},
                           const SampleObserver& observer = {});

Trajectory evolve(const ComplexMatrix& rho0, const Window& w, const LZParams& lz, const MeterParams& m,
                  const EvolveOptions& opts = {});

struct ContinuousRun {
  Trajectory trajectory;
  double t_final = 0.0;              // P at the end of the window
  double quadrature_at_zero = 0.0;   // <a + a^dag> at t = 0 (NaN when 0 is outside)
  double effective_gap = 0.0;        // Delta_R (NaN when 0 is outside)
};

ContinuousRun run_continuous(const LZParams& lz, const MeterParams& m, const Window& w,
                             const EvolveOptions& opts = {});

/// Delta_R = g (1 + 2 x0 <a + a^dag>) at the anticrossing.
double effective_gap(const LZParams& lz, const MeterParams& m, const Window& w, const EvolveOptions& opts = {});

struct Autocorrelation {
  std::vector<double> tau;
  std::vector<Complex> values;
  double thermal_tail = 0.0;
  std::vector<std::string> warnings;
};

/// Meter autocorrelation C_XX(tau) from the quantum-regression propagation of a R0 and
/// a^dag R0 under the free meter Liouvillian. `tau_grid` must be non-decreasing and >= 0.
Autocorrelation regression_autocorrelation(const MeterParams& m, const std::vector<double>& tau_grid,
                                           double dt = 0.0);

}  // namespace qndlz
