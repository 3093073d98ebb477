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

#include "core/nonmarkov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"

namespace qndlz {

namespace {

QubitVector bloch_state(double theta, double phi) {
  QubitVector v;
  v << std::cos(0.5 * theta), std::exp(Complex(0.0, phi)) * std::sin(0.5 * theta);
  return v;
}

// (1/2) ||A||_1 for a 2x2 Hermitian A.
double half_trace_norm(const Qubit& a) {
  const double mean = 0.5 * (a(0, 0).real() + a(1, 1).real());
  const double half_diff = 0.5 * (a(0, 0).real() - a(1, 1).real());
  const Complex off = 0.5 * (a(0, 1) + std::conj(a(1, 0)));
  const double radius = std::sqrt(half_diff * half_diff + std::norm(off));
  return 0.5 * (std::abs(mean + radius) + std::abs(mean - radius));
}

void merge_diagnostics(Trajectory& into, const Trajectory& from) {
  into.max_trace_error = std::max(into.max_trace_error, from.max_trace_error);
  into.max_hermiticity_error = std::max(into.max_hermiticity_error, from.max_hermiticity_error);
  into.min_eigenvalue = std::min(into.min_eigenvalue, from.min_eigenvalue);
  into.max_meter_tail = std::max(into.max_meter_tail, from.max_meter_tail);
  into.steps += from.steps;
  into.warnings.insert(into.warnings.end(), from.warnings.begin(), from.warnings.end());
}

// Inputs |0>, |1>, |+x>, |+y>.
std::array<Qubit, 4> probe_states() {
  std::array<Qubit, 4> out;
  const QubitVector v[4] = {bloch_state(0.0, 0.0), bloch_state(std::numbers::pi, 0.0),
                            bloch_state(0.5 * std::numbers::pi, 0.0),
                            bloch_state(0.5 * std::numbers::pi, 0.5 * std::numbers::pi)};
  for (int i = 0; i < 4; ++i) {
    out[i] = v[i] * v[i].adjoint();
  }
  return out;
}

ReducedMap assemble(std::vector<double> times, const std::array<std::vector<Qubit>, 4>& images) {
  const std::size_t n = times.size();
  for (const auto& im : images) {
    if (im.size() != n) {
      throw InvariantViolation("reduced map: probe runs produced different sample grids");
    }
  }
  ReducedMap map;
  map.times = std::move(times);
  map.image_identity.resize(n);
  map.image_x.resize(n);
  map.image_y.resize(n);
  map.image_z.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Qubit one = images[0][k] + images[1][k];
    map.image_identity[k] = one;
    map.image_z[k] = images[0][k] - images[1][k];
    map.image_x[k] = 2.0 * images[2][k] - one;
    map.image_y[k] = 2.0 * images[3][k] - one;
  }
  return map;
}

}  // namespace

QubitVector StatePair::first() const { return bloch_state(theta, phi); }

QubitVector StatePair::second() const { return bloch_state(std::numbers::pi - theta, phi + std::numbers::pi); }

Eigen::Vector3d StatePair::bloch() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Qubit ReducedMap::apply(std::size_t k, const Eigen::Vector3d& r) const {
  return 0.5 * (image_identity.at(k) + r(0) * image_x.at(k) + r(1) * image_y.at(k) + r(2) * image_z.at(k));
}

std::vector<double> ReducedMap::distinguishability(const StatePair& pair) const {
  const Eigen::Vector3d r = pair.bloch();
  std::vector<double> d(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    // rho_1 - rho_2 = r . sigma
    d[k] = half_trace_norm(r(0) * image_x[k] + r(1) * image_y[k] + r(2) * image_z[k]);
  }
  return d;
}

ReducedMap joint_reduced_map(const LZParams& lz, const MeterParams& m, const Window& w,
                             const EvolveOptions& opts) {
  m.validate();
  EvolveOptions o = opts;
  o.sample_interval = 0.0;
  const HilbertLayout layout = m.layout();
  const ComplexMatrix meter = thermal_state(m.n, m.n_max);
  const auto probes = probe_states();

  std::vector<double> times;
  std::array<std::vector<Qubit>, 4> images;
  Trajectory diag;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> t_i;
    const Trajectory traj = evolve_schedule(
        kron(probes[i], meter), continuous_schedule(w), lz, m, o, [&](double t, const ComplexMatrix& rho) {
          t_i.push_back(t);
          images[i].push_back(partial_trace_meter(rho, layout));
        });
    if (i == 0) {
      times = std::move(t_i);
      diag = traj;
    } else {
      merge_diagnostics(diag, traj);
    }
  }
  ReducedMap map = assemble(std::move(times), images);
  map.diagnostics = std::move(diag);
  return map;
}

ReducedMap ame_reduced_map(const LZParams& lz, const DephasingModel& model, const Window& w,
                           const AmeOptions& opts) {
  AmeOptions o = opts;
  o.sample_interval = 0.0;
  if (o.dt <= 0.0) {
    o.dt = recommended_ame_dt(w, lz, model);  // one grid for all probes
  }
  const auto probes = probe_states();
  std::vector<double> times;
  std::array<std::vector<Qubit>, 4> images;
  Trajectory diag;
  for (int i = 0; i < 4; ++i) {
    std::vector<double> t_i;
    AmeRun run = evolve_ame(probes[i], w, lz, model, o, [&](double t, const Qubit& rho) {
      t_i.push_back(t);
      images[i].push_back(rho);
    });
    if (i == 0) {
      times = std::move(t_i);
      diag = std::move(run.trajectory);
    } else {
      merge_diagnostics(diag, run.trajectory);
    }
  }
  ReducedMap map = assemble(std::move(times), images);
  map.diagnostics = std::move(diag);
  return map;
}

DistinguishabilityTrace distinguishability_trajectory(const StatePair& pair, const LZParams& lz,
                                                      const MeterParams& m, const Window& w,
                                                      const EvolveOptions& opts) {
  m.validate();
  const HilbertLayout layout = m.layout();
  const ComplexMatrix meter = thermal_state(m.n, m.n_max);
  const QubitVector v[2] = {pair.first(), pair.second()};
  std::vector<double> times[2];
  std::vector<Qubit> reduced[2];
  for (int i = 0; i < 2; ++i) {
    const ComplexMatrix rho0 = kron(v[i] * v[i].adjoint(), meter);
    evolve_schedule(rho0, continuous_schedule(w), lz, m, opts, [&](double t, const ComplexMatrix& rho) {
      times[i].push_back(t);
      reduced[i].push_back(partial_trace_meter(rho, layout));
    });
  }
  if (times[0].size() != times[1].size()) {
    throw InvariantViolation("distinguishability: runs produced different sample grids");
  }
  DistinguishabilityTrace out;
  out.times = times[0];
  out.d.reserve(out.times.size());
  for (std::size_t k = 0; k < out.times.size(); ++k) {
    out.d.push_back(trace_distance(reduced[0][k], reduced[1][k]));
  }
  return out;
}

double positive_increments(const std::vector<double>& d, double noise) {
  double sum = 0.0;
  for (std::size_t k = 1; k < d.size(); ++k) {
    const double inc = d[k] - d[k - 1];
    if (inc > noise) {
      sum += inc;
    }
  }
  return sum;
}

NMResult blp_from_map(const ReducedMap& map, const PairGrid& grid) {
  if (grid.n_theta < 2 || grid.n_phi < 1 || (grid.refine && grid.refine_points < 2)) {
    throw InvalidArgument("blp: pair grid needs n_theta >= 2, n_phi >= 1, refine_points >= 2");
  }
  NMResult res;
  double best = -1.0;
  auto consider = [&](const StatePair& p) {
    const double n = positive_increments(map.distinguishability(p));
    ++res.pairs_evaluated;
    if (n > best) {
      best = n;
      res.best_pair = p;
    }
  };

  const double d_theta = 0.5 * std::numbers::pi / (grid.n_theta - 1);
  const double d_phi = 2.0 * std::numbers::pi / grid.n_phi;
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int j = 0; j < grid.n_phi; ++j) {
      consider({i * d_theta, j * d_phi});
    }
  }
  if (grid.refine) {
    const StatePair centre = res.best_pair;
    const int p = grid.refine_points;
    for (int i = 0; i < p; ++i) {
      const double th = std::clamp(centre.theta + (static_cast<double>(i) / (p - 1) - 0.5) * d_theta, 0.0,
                                   std::numbers::pi);
      for (int j = 0; j < p; ++j) {
        consider({th, centre.phi + (static_cast<double>(j) / (p - 1) - 0.5) * d_phi});
      }
    }
  }

  res.n_value = best;
  res.times = map.times;
  res.d_trajectory = map.distinguishability(res.best_pair);
  res.diagnostics = map.diagnostics;
  std::ostringstream os;
  os << "antipodal pure pairs, shared thermal meter; " << grid.n_theta << "x" << grid.n_phi
     << " hemisphere grid";
  if (grid.refine) {
    os << " + " << grid.refine_points << "x" << grid.refine_points << " refinement";
  }
  res.search_space = os.str();
  return res;
}

NMResult blp_measure(const LZParams& lz, const MeterParams& m, const Window& w, const EvolveOptions& opts,
                     const PairGrid& grid) {
  return blp_from_map(joint_reduced_map(lz, m, w, opts), grid);
}

}  // namespace qndlz
