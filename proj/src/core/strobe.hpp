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

// Pulsed QND coupling: rectangular pulses of duration T_P centred on j * delta_t,
// optionally with random time shifts t_j entering the coupling as H_S(t + t_j).

#include <cstdint>
#include <string>
#include <vector>

#include "core/open_dynamics.hpp"

namespace qndlz {

/// UnitArea: coupling amplitude 1/T_P during a pulse (x0^2 for T_P = 1/x0).
/// AmplitudeX0: coupling x0 during a pulse, as in the continuous model.
enum class PulseConvention { UnitArea, AmplitudeX0 };

const char* to_string(PulseConvention c);
PulseConvention pulse_convention_from_string(const std::string& s);

struct PulseSchedule {
  std::vector<double> centers;
  double duration = 0.0;
  double delta_t = 0.0;
  std::vector<double> shifts;  // empty, or one per pulse
  PulseConvention convention = PulseConvention::AmplitudeX0;

  std::size_t size() const { return centers.size(); }
  double amplitude() const;
};

/// Centres j * delta_t inside the window; pulses reaching past an edge are clipped.
/// Throws InvalidArgument unless delta_t > t_p > 0.
PulseSchedule build_schedule(const Window& w, double delta_t, double t_p,
                             PulseConvention convention = PulseConvention::AmplitudeX0);

/// Segments: coupling off between pulses, on (with the pulse's shift) inside. Pulse
/// segments carry max_dt = T_P / steps_per_pulse, gaps max_dt = gap_max_dt. Split at
/// t = 0 when it falls inside.
CouplingSchedule coupling_schedule(const PulseSchedule& p, const Window& w, int steps_per_pulse = 20,
                                   double gap_max_dt = std::numeric_limits<double>::infinity());

struct StrobeOptions {
  EvolveOptions evolve;
  int steps_per_pulse = 20;
  // Step cap between pulses; <= 0 means T_P / 50. The meter leaves each pulse displaced
  // and relaxes at rates ~ kappa k on the occupied levels.
  double gap_max_dt = 0.0;
};

Trajectory run_stroboscopic(const LZParams& lz, const MeterParams& m, const PulseSchedule& schedule,
                            const Window& w, const StrobeOptions& opts = {});

/// Kink detector: mean |d2P/dt2| on samples inside pulses over the same mean on samples
/// in the middle half of the gaps. Needs a sample spacing well below T_P.
double cusp_contrast(const Trajectory& traj, const PulseSchedule& schedule);

struct NoiseSpec {
  double tau = 0.0;  // standard deviation of the shifts
  int n_it = 50;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Uniform shifts on [-sqrt(3) tau, sqrt(3) tau] for one sample. The stream is
/// std::mt19937_64 seeded through std::seed_seq from (seed, sample index), so every
/// sample is reproducible on its own.
std::vector<double> draw_shifts(const NoiseSpec& noise, std::size_t sample, std::size_t n_pulses);

struct MCSummary {
  std::vector<double> times;
  std::vector<double> mean_p;
  std::vector<double> stderr_p;  // sample std / sqrt(n_it)
  std::vector<double> final_t;   // per sample
  double mean_final = 0.0;
  double stderr_final = 0.0;
  std::uint64_t seed = 0;
  Trajectory diagnostics;  // worst case over samples
};

/// Aggregation runs in sample order, so the result does not depend on `workers`.
MCSummary run_noisy_mc(const LZParams& lz, const MeterParams& m, const PulseSchedule& schedule,
                       const NoiseSpec& noise, const Window& w, const StrobeOptions& opts = {},
                       int workers = 1);

}  // namespace qndlz
