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

// BLP non-Markovianity: N = max over pairs of the summed positive increments of
// D(t) = (1/2) || Tr_M rho_1(t) - Tr_M rho_2(t) ||_1.

#include <string>
#include <vector>

#include "core/adiabatic_me.hpp"
#include "core/open_dynamics.hpp"

namespace qndlz {

/// Antipodal pure pair; Bloch angles refer to the sigma_z basis.
struct StatePair {
  double theta = 0.0;
  double phi = 0.0;

  QubitVector first() const;
  QubitVector second() const;  // orthogonal partner
  Eigen::Vector3d bloch() const;
};

/// Reduced dynamical map sampled on a time grid. Linear in the qubit input, so it is
/// fixed by the images of 1, sigma_x, sigma_y, sigma_z.
struct ReducedMap {
  std::vector<double> times;
  std::vector<Qubit> image_identity;
  std::vector<Qubit> image_x;
  std::vector<Qubit> image_y;
  std::vector<Qubit> image_z;
  Trajectory diagnostics;  // worst-case checks over the four physical runs

  /// Map applied to rho = (1 + r . sigma) / 2 at sample k.
  Qubit apply(std::size_t k, const Eigen::Vector3d& r) const;
  /// D(t) for the pair, from the map.
  std::vector<double> distinguishability(const StatePair& pair) const;
};

/// Four joint runs from |0>, |1>, |+x>, |+y> (each tensored with the thermal meter),
/// sampled at every step.
ReducedMap joint_reduced_map(const LZParams& lz, const MeterParams& m, const Window& w,
                             const EvolveOptions& opts = {});

/// Same construction under the adiabatic master equation.
ReducedMap ame_reduced_map(const LZParams& lz, const DephasingModel& model, const Window& w,
                           const AmeOptions& opts = {});

struct DistinguishabilityTrace {
  std::vector<double> times;
  std::vector<double> d;
};

/// Direct route: both joint states evolved explicitly.
DistinguishabilityTrace distinguishability_trajectory(const StatePair& pair, const LZParams& lz,
                                                      const MeterParams& m, const Window& w,
                                                      const EvolveOptions& opts = {});

/// Sum of max(0, D_{k+1} - D_k); increments below `noise` are dropped.
double positive_increments(const std::vector<double>& d, double noise = 1e-12);

struct PairGrid {
  int n_theta = 6;  // theta over [0, pi/2]: one hemisphere suffices by antipodal symmetry
  int n_phi = 6;    // phi over [0, 2 pi)
  bool refine = true;
  int refine_points = 5;  // per axis, spanning one cell around the best node
};

struct NMResult {
  double n_value = 0.0;
  StatePair best_pair;
  std::vector<double> times;
  std::vector<double> d_trajectory;  // best pair
  std::size_t pairs_evaluated = 0;
  std::string search_space;
  Trajectory diagnostics;
};

NMResult blp_from_map(const ReducedMap& map, const PairGrid& grid = {});

/// Joint Lindblad dynamics with every-step sampling.
NMResult blp_measure(const LZParams& lz, const MeterParams& m, const Window& w, const EvolveOptions& opts = {},
                     const PairGrid& grid = {});

}  // namespace qndlz
