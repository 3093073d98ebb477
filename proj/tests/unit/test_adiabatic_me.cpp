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

#include "core/adiabatic_me.hpp"
#include "core/errors.hpp"

using namespace qndlz;

namespace {

double max_abs(const Qubit& m) { return m.cwiseAbs().maxCoeff(); }

MeterParams meter(double omega_c, double kappa, double n, double x0) {
  MeterParams m;
  m.omega_c = omega_c;
  m.kappa = kappa;
  m.n = n;
  m.x0 = x0;
  m.n_max = 30;
  return m;
}

}  // namespace

TEST_SUITE("adiabatic_me") {

TEST_CASE("zero-frequency spectral weight") {
  // kappa = 2 omega_c, n = 0, x0 = 1 gives G(0) = 1/omega_c
  for (double w : {0.5, 1.0, 3.0}) {
    CHECK(spectral_g0(meter(w, 2.0 * w, 0.0, 1.0)) == doctest::Approx(1.0 / w).epsilon(1e-14));
  }
  CHECK(spectral_g0(meter(1.0, 1.0, 0.5, 2.0)) == doctest::Approx(4.0 * 2.0 * 1.0 / 1.25).epsilon(1e-14));
  // G(0)/2 is the integral of Re C_XX over [0, inf); Simpson on a long grid
  const MeterParams m = meter(1.0, 0.7, 0.3, 1.2);
  const int n = 200000;
  const double upper = 80.0 / m.kappa, h = upper / n;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    s += w * analytic_autocorrelation(m, k * h).real();
  }
  CHECK(s * h / 3.0 == doctest::Approx(0.5 * spectral_g0(m)).epsilon(1e-8));
  CHECK(analytic_autocorrelation(m, 0.0).real() == doctest::Approx(1.44 * 1.6).epsilon(1e-14));
}

TEST_CASE("dephasing models") {
  const LZParams lz{2.0, 1.0};
  const DephasingModel e = DephasingModel::explicit_rate(0.5, lz);
  CHECK(e.g0_spectral == doctest::Approx(2.0 * 0.5 / 4.0));
  CHECK(dephasing_rate(0.0, lz, e) == doctest::Approx(0.5));
  CHECK(dephasing_rate(3.0, lz, e) == doctest::Approx(0.5 * (4.0 + 9.0) / 4.0));
  const DephasingModel c = DephasingModel::constant(0.5);
  CHECK(dephasing_rate(3.0, lz, c) == doctest::Approx(0.5));
  const MeterParams m = meter(1.0, 2.0, 0.0, 1.0);
  const DephasingModel fm = DephasingModel::from_meter(m, lz);
  CHECK(fm.gamma0 == doctest::Approx(spectral_g0(m) * 4.0 / 2.0));
  CHECK(fm.source == GammaSource::Meter);
  CHECK_THROWS_AS(DephasingModel::explicit_rate(-1.0, lz).validate(), InvalidArgument);
}

TEST_CASE("Avron function") {
  const double s2 = std::sqrt(2.0);
  CHECK(avron_q(1.0) == doctest::Approx(std::numbers::pi / 2 * (2.0 + s2) / (s2 * (s2 + 1.0) * (s2 + 1.0))).epsilon(1e-14));
  CHECK(avron_q(0.0) == 0.0);
  // strong dephasing: Q(x) -> pi / (2x)
  CHECK(avron_q(1e4) * 1e4 == doctest::Approx(std::numbers::pi / 2).epsilon(1e-3));
  const LZParams lz = LZParams::from_adiabaticity(20.0);
  const DephasingModel d = DephasingModel::explicit_rate(lz.g, lz);
  CHECK(asymptotic_infidelity(lz, d) == doctest::Approx(lz.eps / (2 * lz.g * lz.g) * avron_q(1.0)).epsilon(1e-14));
  CHECK(asymptotic_validity_warnings(lz, d).empty());
  CHECK_FALSE(asymptotic_validity_warnings({0.5, 1.0}, DephasingModel::explicit_rate(0.1, {0.5, 1.0})).empty());
}

TEST_CASE("generator structure") {
  const LZParams lz{1.0, 1.0};
  const DephasingModel d = DephasingModel::explicit_rate(0.8, lz);
  Qubit rho;
  rho << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  for (double t : {-2.0, 0.0, 1.5}) {
    const Qubit r = ame_rhs(rho, t, lz, d);
    CHECK(std::abs(r.trace()) < 1e-15);
    CHECK(max_abs(r - r.adjoint()) < 1e-15);
    // dephasing leaves instantaneous populations alone: only the coherent part moves them
    const Qubit coherent = ame_rhs(rho, t, lz, DephasingModel::explicit_rate(0.0, lz));
    const AdiabaticFrame f = adiabatic_frame(t, lz);
    const Eigen::Vector2cd p = f.plus_state.cast<Complex>();
    CHECK(std::abs((p.adjoint() * (r - coherent) * p)(0, 0)) < 1e-14);
    // and damps the coherence at rate gamma(t)
    const Eigen::Vector2cd mi = f.minus_state.cast<Complex>();
    const Complex coh = (p.adjoint() * rho * mi)(0, 0);
    const Complex dcoh = (p.adjoint() * (r - coherent) * mi)(0, 0);
    CHECK(std::abs(dcoh + dephasing_rate(t, lz, d) * coh) < 1e-13);
  }
}

TEST_CASE("no dephasing gives coherent LZ") {
  const LZParams lz{1.0, 1.0};
  const Window w{-5.0, 5.0};
  AmeOptions o;
  o.dt = 0.002;
  o.sample_interval = 0.1;
  const AmeRun run = run_ame(lz, DephasingModel::explicit_rate(0.0, lz), w, o);
  const Trajectory coh = coherent_trajectory(w, lz, 0.002, 0.1);
  REQUIRE(run.trajectory.size() == coh.size());
  for (std::size_t i = 0; i < coh.size(); ++i) {
    CHECK(run.trajectory.p_values[i] == doctest::Approx(coh.p_values[i]).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("dephasing runs stay physical; strong dephasing freezes the populations") {
  const LZParams lz{1.0, 1.0};
  const Window w{-5.0, 5.0};
  for (double g0 : {0.5, 2.0, 20.0}) {
    const AmeRun run = run_ame(lz, DephasingModel::explicit_rate(g0, lz), w);
    CHECK(run.trajectory.max_trace_error < 1e-10);
    CHECK(run.trajectory.max_hermiticity_error < 1e-10);
    CHECK(run.trajectory.min_eigenvalue > -1e-8);
    CHECK(run.t_final >= 0.0);
    CHECK(run.t_final <= 1.0);
  }
  // Zeno limit
  const double weak = run_ame(lz, DephasingModel::explicit_rate(2.0, lz), w).t_final;
  const double strong = run_ame(lz, DephasingModel::explicit_rate(20.0, lz), w).t_final;
  CHECK(strong < weak);
}

TEST_CASE("relative infidelity") {
  const LZParams lz{1.0, 1.0};
  const Window w{-5.0, 5.0};
  const RelativeInfidelity zero = relative_infidelity(lz, DephasingModel::explicit_rate(0.0, lz), w);
  CHECK(std::abs(zero.delta_t) < 1e-14);
  const RelativeInfidelity r = relative_infidelity(lz, DephasingModel::explicit_rate(10.0, lz), w);
  CHECK(r.delta_t == doctest::Approx(r.t_dephased - r.t_coherent));
  CHECK(r.delta_t < 0.0);
}

TEST_CASE("constant-rate strong dephasing follows the Zeno law") {
  // At g^2/eps = 20, gamma0 = 50 g the constant-rate model should give pi eps / (4 gamma0 g).
  const LZParams lz = LZParams::from_adiabaticity(20.0);
  const Window w = Window::symmetric(20.0 * lz.time_unit());
  const double gamma0 = 50.0 * lz.g;
  const AmeRun run = run_ame(lz, DephasingModel::constant(gamma0), w);
  CHECK(run.t_final == doctest::Approx(std::numbers::pi * lz.eps / (4.0 * gamma0 * lz.g)).epsilon(0.05));
}

}  // TEST_SUITE
