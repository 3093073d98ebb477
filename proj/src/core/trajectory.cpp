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

#include "core/trajectory.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace qndlz {

void Trajectory::push(double t, double p, const SampleDiagnostics& d) {
  push(t, p);
  diagnostics.push_back(d);
  max_trace_error = std::max(max_trace_error, d.trace_error);
  max_hermiticity_error = std::max(max_hermiticity_error, d.hermiticity_error);
  min_eigenvalue = diagnostics.size() == 1 ? d.min_eigenvalue : std::min(min_eigenvalue, d.min_eigenvalue);
  if (!std::isnan(d.meter_tail)) {
    max_meter_tail = std::max(max_meter_tail, d.meter_tail);
  }
}

double trailing_average(const Trajectory& traj, double fraction) {
  if (traj.times.empty()) {
    throw InvalidArgument("trailing_average: empty trajectory");
  }
  const double t_end = traj.times.back();
  const double t_cut = t_end - fraction * (t_end - traj.times.front());
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    if (traj.times[i] >= t_cut) {
      sum += traj.p_values[i];
      ++count;
    }
  }
  return sum / static_cast<double>(count);
}

std::size_t nearest_sample(const Trajectory& traj, double t) {
  if (traj.times.empty()) {
    throw InvalidArgument("nearest_sample: empty trajectory");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    if (std::abs(traj.times[i] - t) < std::abs(traj.times[best] - t)) {
      best = i;
    }
  }
  return best;
}

long steps_for(double length, double dt_max) {
  if (!(dt_max > 0.0) || !std::isfinite(dt_max)) {
    throw InvalidArgument("time step must be positive and finite");
  }
  if (length <= 0.0) {
    return 0;
  }
  return std::max(1L, static_cast<long>(std::ceil(length / dt_max - 1e-9)));
}

}  // namespace qndlz
