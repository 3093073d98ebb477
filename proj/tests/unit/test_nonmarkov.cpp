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


#include <doctest.h>

#include <cmath>
#include <numbers>

#include "core/nonmarkov.hpp"

using namespace qndlz;

namespace {

MeterParams meter(double kappa, double n, double x0, int n_max) {
  MeterParams m;
  m.omega_c = 1.0;
  m.kappa = kappa;
  m.n = n;
  m.x0 = x0;
  m.n_max = n_max;
  return m;
}

}  // namespace

TEST_SUITE("nonmarkov") {

TEST_CASE("state pairs are orthogonal and antipodal") {
  for (double th : {0.0, 0.4, std::numbers::pi / 2}) {
    for (double ph : {0.0, 1.0, 4.0}) {
      const StatePair p{th, ph};
      CHECK(std::abs(p.first().dot(p.second())) < 1e-15);
      CHECK(p.first().norm() == doctest::Approx(1.0));
      const QubitVector v = p.first();
      const Qubit rho = v * v.adjoint();
      const Eigen::Vector3d r((rho * pauli_x()).trace().real(), (rho * pauli_y()).trace().real(),
                              (rho * pauli_z()).trace().real());
      CHECK((r - p.bloch()).norm() < 1e-14);
    }
  }
}

TEST_CASE("positive increments") {
  CHECK(positive_increments({0.0, 1.0, 0.5, 2.0}) == doctest::Approx(2.5));
  CHECK(positive_increments({1.0, 0.9, 0.8}) == 0.0);
  CHECK(positive_increments({0.5, 0.5 + 1e-13, 0.5}) == 0.0);
  CHECK(positive_increments({}) == 0.0);
}

TEST_CASE("map route equals direct evolution of the pair") {
  const LZParams lz{1.0, 1.0};
  const MeterParams m = meter(1.0, 0.2, 0.6, 8);
  const Window w{-2.0, 2.0};
  EvolveOptions opts;
  opts.dt = 0.01;
  const ReducedMap map = joint_reduced_map(lz, m, w, opts);
  for (const StatePair pair : {StatePair{0.3, 1.1}, StatePair{std::numbers::pi / 2, 0.0}}) {
    const auto direct = distinguishability_trajectory(pair, lz, m, w, opts);
    const auto from_map = map.distinguishability(pair);
    REQUIRE(direct.d.size() == from_map.size());
    double dev = 0.0;
    for (std::size_t k = 0; k < from_map.size(); ++k) dev = std::max(dev, std::abs(direct.d[k] - from_map[k]));
    CHECK(dev < 1e-10);
    CHECK(from_map.front() == doctest::Approx(1.0));
  }
  CHECK(map.diagnostics.max_trace_error < 1e-8);
}

TEST_CASE("decoupled qubit has no backflow") {
  const LZParams lz{1.0, 1.0};
  EvolveOptions opts;
  opts.dt = 0.01;
  PairGrid grid;
  grid.n_theta = 3;
  grid.n_phi = 3;
  const NMResult r = blp_measure(lz, meter(1.0, 0.0, 0.0, 4), {-2.0, 2.0}, opts, grid);
  CHECK(r.n_value <= 1e-10);
  CHECK(r.pairs_evaluated > 9);
}

TEST_CASE("Markovian dephasing has no backflow, coupled meter can") {
  const LZParams lz{1.0, 1.0};
  const Window w{-5.0, 5.0};
  const ReducedMap markov = ame_reduced_map(lz, DephasingModel::constant(0.5), w);
  CHECK(blp_from_map(markov).n_value <= 1e-10);
  EvolveOptions opts;
  PairGrid grid;
  grid.n_theta = 3;
  grid.n_phi = 4;
  grid.refine = false;
  const NMResult slow = blp_measure(lz, meter(0.05, 0.0, 1.0, 20), {-3.0, 3.0}, opts, grid);
  CHECK(slow.n_value > 1e-3);
  CHECK(slow.d_trajectory.size() == slow.times.size());
  CHECK_FALSE(slow.search_space.empty());
}

TEST_CASE("reduced map is trace preserving") {
  const LZParams lz{1.0, 1.0};
  const ReducedMap map = ame_reduced_map(lz, DephasingModel::explicit_rate(1.0, lz), {-2.0, 2.0});
  for (std::size_t k = 0; k < map.times.size(); k += 50) {
    CHECK(std::abs(map.image_identity[k].trace() - 2.0) < 1e-10);
    CHECK(std::abs(map.image_x[k].trace()) < 1e-10);
    CHECK(std::abs(map.apply(k, Eigen::Vector3d(0.2, -0.3, 0.5)).trace() - 1.0) < 1e-10);
  }
}

}  // TEST_SUITE
