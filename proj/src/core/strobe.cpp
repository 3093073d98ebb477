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

#include "core/strobe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "core/errors.hpp"
#include "core/parallel.hpp"

namespace qndlz {

const char* to_string(PulseConvention c) {
  return c == PulseConvention::UnitArea ? "unit_area" : "amplitude_x0";
}

PulseConvention pulse_convention_from_string(const std::string& s) {
  if (s == "unit_area") {
    return PulseConvention::UnitArea;
  }
  if (s == "amplitude_x0") {
    return PulseConvention::AmplitudeX0;
  }
  throw InvalidArgument("unknown pulse convention '" + s + "' (expected unit_area or amplitude_x0)");
}

double PulseSchedule::amplitude() const {
  return convention == PulseConvention::UnitArea ? 1.0 / duration : 1.0;
}

PulseSchedule build_schedule(const Window& w, double delta_t, double t_p, PulseConvention convention) {
  if (!(t_p > 0.0) || !std::isfinite(t_p)) {
    throw InvalidArgument("pulse duration must be > 0");
  }
  if (!(delta_t > t_p) || !std::isfinite(delta_t)) {
    throw InvalidArgument("pulses overlap: delta_t must exceed the pulse duration");
  }
  PulseSchedule s;
  s.duration = t_p;
  s.delta_t = delta_t;
  s.convention = convention;
  const long j0 = static_cast<long>(std::ceil(w.t_begin / delta_t - 1e-9));
  const long j1 = static_cast<long>(std::floor(w.t_end / delta_t + 1e-9));
  for (long j = j0; j <= j1; ++j) {
    s.centers.push_back(static_cast<double>(j) * delta_t);
  }
  return s;
}

CouplingSchedule coupling_schedule(const PulseSchedule& p, const Window& w, int steps_per_pulse,
                                   double gap_max_dt) {
  if (steps_per_pulse < 1) {
    throw InvalidArgument("steps_per_pulse must be >= 1");
  }
  if (!p.shifts.empty() && p.shifts.size() != p.centers.size()) {
    throw InvalidArgument("pulse schedule: one shift per pulse expected");
  }
  CouplingSchedule raw;
  double cursor = w.t_begin;
  const double max_dt = p.duration / steps_per_pulse;
  for (std::size_t j = 0; j < p.centers.size(); ++j) {
    const double a = std::max(w.t_begin, p.centers[j] - 0.5 * p.duration);
    const double b = std::min(w.t_end, p.centers[j] + 0.5 * p.duration);
    if (b <= a) {
      continue;
    }
    if (a > cursor) {
      raw.push_back({cursor, a, 0.0, 0.0, gap_max_dt});
    }
    const double shift = p.shifts.empty() ? 0.0 : p.shifts[j];
    raw.push_back({a, b, p.amplitude(), shift, max_dt});
    cursor = b;
  }
  if (w.t_end > cursor) {
    raw.push_back({cursor, w.t_end, 0.0, 0.0, gap_max_dt});
  }

  CouplingSchedule out;
  for (const CouplingSegment& s : raw) {
    if (s.t_begin < 0.0 && s.t_end > 0.0) {
      CouplingSegment left = s;
      CouplingSegment right = s;
      left.t_end = 0.0;
      right.t_begin = 0.0;
      out.push_back(left);
      out.push_back(right);
    } else {
      out.push_back(s);
    }
  }
  return out;
}

Trajectory run_stroboscopic(const LZParams& lz, const MeterParams& m, const PulseSchedule& schedule,
                            const Window& w, const StrobeOptions& opts) {
  const double gap_dt = opts.gap_max_dt > 0.0 ? opts.gap_max_dt : schedule.duration / 50.0;
  const CouplingSchedule segments = coupling_schedule(schedule, w, opts.steps_per_pulse, gap_dt);
  return evolve_schedule(initial_joint_state(w.t_begin, lz, m), segments, lz, m, opts.evolve);
}

double cusp_contrast(const Trajectory& traj, const PulseSchedule& schedule) {
  if (traj.size() < 3 || schedule.centers.empty()) {
    throw InvalidArgument("cusp_contrast: needs a sampled trajectory and at least one pulse");
  }
  double in_sum = 0.0;
  double out_sum = 0.0;
  std::size_t in_n = 0;
  std::size_t out_n = 0;
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const double h1 = traj.times[k] - traj.times[k - 1];
    const double h2 = traj.times[k + 1] - traj.times[k];
    // only evenly spaced triples; forced samples at segment ends would add noise
    if (h1 <= 0.0 || std::abs(h1 - h2) > 1e-6 * h1) {
      continue;
    }
    const double curvature =
        std::abs(traj.p_values[k + 1] - 2.0 * traj.p_values[k] + traj.p_values[k - 1]) / (h1 * h2);
    double nearest = std::numeric_limits<double>::infinity();
    for (double c : schedule.centers) {
      nearest = std::min(nearest, std::abs(traj.times[k] - c));
    }
    if (nearest <= 0.5 * schedule.duration) {
      in_sum += curvature;
      ++in_n;
    } else if (nearest >= 0.25 * schedule.delta_t) {
      out_sum += curvature;
      ++out_n;
    }
  }
  if (in_n == 0 || out_n == 0) {
    throw InvalidArgument("cusp_contrast: sampling does not resolve pulses and gaps");
  }
  return (in_sum / static_cast<double>(in_n)) / (out_sum / static_cast<double>(out_n));
}

void NoiseSpec::validate() const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw InvalidArgument("noise: tau must be >= 0");
  }
  if (n_it < 2) {
    throw InvalidArgument("noise: n_it must be >= 2");
  }
}

std::vector<double> draw_shifts(const NoiseSpec& noise, std::size_t sample, std::size_t n_pulses) {
  const std::uint64_t s = noise.seed;
  const std::uint64_t i = sample;
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
  std::mt19937_64 rng(seq);
  const double half = std::sqrt(3.0) * noise.tau;
  std::vector<double> out(n_pulses);
  for (double& x : out) {
    // 53 random bits -> [0, 1); avoids implementation-defined distributions
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = (2.0 * u - 1.0) * half;
  }
  return out;
}

namespace {

// Mean and standard error of xs, shifted by xs[0] so identical samples give exactly zero spread.
void mean_stderr(const std::vector<double>& xs, double& mean, double& err) {
  const double ref = xs.front();
  double s1 = 0.0;
  double s2 = 0.0;
  for (double x : xs) {
    const double d = x - ref;
    s1 += d;
    s2 += d * d;
  }
  const double n = static_cast<double>(xs.size());
  mean = ref + s1 / n;
  const double var = std::max(0.0, (s2 - s1 * s1 / n) / (n - 1.0));
  err = std::sqrt(var / n);
}

}  // namespace

MCSummary run_noisy_mc(const LZParams& lz, const MeterParams& m, const PulseSchedule& schedule,
                       const NoiseSpec& noise, const Window& w, const StrobeOptions& opts, int workers) {
  noise.validate();
  std::vector<Trajectory> runs(static_cast<std::size_t>(noise.n_it));
  parallel_for(runs.size(), workers, [&](std::size_t i) {
    PulseSchedule p = schedule;
    p.shifts = draw_shifts(noise, i, p.size());
    runs[i] = run_stroboscopic(lz, m, p, w, opts);
  });

  MCSummary out;
  out.seed = noise.seed;
  out.times = runs.front().times;
  for (const Trajectory& r : runs) {
    if (r.times != out.times) {
      throw InvariantViolation("noisy MC: samples produced different time grids");
    }
  }
  const std::size_t n_t = out.times.size();
  out.mean_p.resize(n_t);
  out.stderr_p.resize(n_t);
  std::vector<double> column(runs.size());
  for (std::size_t k = 0; k < n_t; ++k) {
    for (std::size_t i = 0; i < runs.size(); ++i) {
      column[i] = runs[i].p_values[k];
    }
    mean_stderr(column, out.mean_p[k], out.stderr_p[k]);
  }
  for (const Trajectory& r : runs) {
    out.final_t.push_back(r.final_p());
  }
  mean_stderr(out.final_t, out.mean_final, out.stderr_final);

  Trajectory& d = out.diagnostics;
  d = runs.front();
  for (std::size_t i = 1; i < runs.size(); ++i) {
    d.max_trace_error = std::max(d.max_trace_error, runs[i].max_trace_error);
    d.max_hermiticity_error = std::max(d.max_hermiticity_error, runs[i].max_hermiticity_error);
    d.min_eigenvalue = std::min(d.min_eigenvalue, runs[i].min_eigenvalue);
    d.max_meter_tail = std::max(d.max_meter_tail, runs[i].max_meter_tail);
    d.steps += runs[i].steps;
    for (const std::string& msg : runs[i].warnings) {
      if (std::find(d.warnings.begin(), d.warnings.end(), msg) == d.warnings.end()) {
        d.warnings.push_back(msg);
      }
    }
  }
  return out;
}

}  // namespace qndlz
