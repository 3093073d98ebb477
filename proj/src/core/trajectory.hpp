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

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace qndlz {

/// Evolution window [t_begin, t_end] in absolute time units.
struct Window {
  double t_begin = -5.0;
  double t_end = 5.0;

  double length() const { return t_end - t_begin; }
  bool contains(double t) const { return t >= t_begin && t <= t_end; }
  static Window symmetric(double half_width) { return {-half_width, half_width}; }
};

struct SampleDiagnostics {
  double trace_error = 0.0;  // |Tr rho - 1| (or | |psi|^2 - 1 | for pure-state runs)
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  double quadrature = std::numeric_limits<double>::quiet_NaN();  // <a + a^dagger>
  double meter_tail = std::numeric_limits<double>::quiet_NaN();  // top two Fock levels
};

/// Time series of the diabatic transfer probability plus per-sample diagnostics.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> p_values;
  std::vector<SampleDiagnostics> diagnostics;  // empty, or aligned with `times`
  std::vector<std::string> warnings;

  double max_trace_error = 0.0;
  double max_hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
  double max_meter_tail = 0.0;
  std::size_t steps = 0;

  std::size_t size() const { return times.size(); }
  double final_p() const { return p_values.empty() ? std::numeric_limits<double>::quiet_NaN() : p_values.back(); }

  void push(double t, double p) {
    times.push_back(t);
    p_values.push_back(p);
  }
  void push(double t, double p, const SampleDiagnostics& d);
};

/// Mean of P over the stored samples in the final `fraction` of the window.
double trailing_average(const Trajectory& traj, double fraction = 0.1);

/// Index of the stored sample closest to t.
std::size_t nearest_sample(const Trajectory& traj, double t);

/// Fixed-step grid helper: number of equal steps of size <= dt_max covering `length`.
long steps_for(double length, double dt_max);

/// Decides at which integrator steps a sample is stored. interval <= 0 stores every step.
class SampleClock {
 public:
  SampleClock(double t_begin, double interval) : t0_(t_begin), interval_(interval), next_(t_begin) {}

  bool due(double t) {
    if (interval_ <= 0.0) {
      return true;
    }
    if (t + 1e-12 * std::max(1.0, std::abs(t)) < next_) {
      return false;
    }
    const double k = std::floor((t - t0_) / interval_ + 1e-9) + 1.0;
    next_ = t0_ + k * interval_;
    return true;
  }

 private:
  double t0_;
  double interval_;
  double next_;
};

}  // namespace qndlz
