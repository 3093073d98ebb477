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

#include "core/errors.hpp"
#include "core/strobe.hpp"

using namespace qndlz;

namespace {

MeterParams meter(double kappa, double x0, int n_max) {
  MeterParams m;
  m.omega_c = 1.0;
  m.kappa = kappa;
  m.n = 0.0;
  m.x0 = x0;
  m.n_max = n_max;
  return m;
}

}  // namespace

TEST_SUITE("strobe") {

TEST_CASE("schedule construction") {
  const PulseSchedule s = build_schedule({-5.0, 5.0}, 1.0, 0.1);
  REQUIRE(s.size() == 11);
  for (std::size_t j = 0; j < s.size(); ++j) CHECK(s.centers[j] == doctest::Approx(-5.0 + double(j)));
  CHECK(s.amplitude() == 1.0);
  CHECK(build_schedule({-5.0, 5.0}, 1.0, 0.1, PulseConvention::UnitArea).amplitude() == doctest::Approx(10.0));
  CHECK(build_schedule({-5.0, 5.0}, 2.0, 0.1).size() == 5);  // -4 ... 4
  CHECK_THROWS_AS(build_schedule({-5.0, 5.0}, 0.1, 0.1), InvalidArgument);
  CHECK_THROWS_AS(build_schedule({-5.0, 5.0}, 1.0, 0.0), InvalidArgument);
  CHECK(pulse_convention_from_string("unit_area") == PulseConvention::UnitArea);
  CHECK_THROWS_AS(pulse_convention_from_string("area"), InvalidArgument);
}

TEST_CASE("coupling schedule tiles the window") {
  const Window w{-5.0, 5.0};
  const PulseSchedule s = build_schedule(w, 1.0, 0.2);
  const CouplingSchedule c = coupling_schedule(s, w, 20, 0.004);
  REQUIRE_FALSE(c.empty());
  CHECK(c.front().t_begin == w.t_begin);
  CHECK(c.back().t_end == w.t_end);
  double on = 0.0;
  bool zero_is_boundary = false;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) CHECK(c[i].t_begin == c[i - 1].t_end);
    CHECK(c[i].t_end > c[i].t_begin);
    if (c[i].amplitude > 0.0) {
      on += c[i].t_end - c[i].t_begin;
      CHECK(c[i].max_dt == doctest::Approx(0.2 / 20));
    } else {
      CHECK(c[i].max_dt == doctest::Approx(0.004));
    }
    zero_is_boundary |= c[i].t_end == 0.0;
  }
  // nine full pulses plus two half pulses at the clipped edges
  CHECK(on == doctest::Approx(10 * 0.2));
  CHECK(zero_is_boundary);
}

TEST_CASE("timing noise draws") {
  NoiseSpec n{0.1, 50, 42};
  const auto a = draw_shifts(n, 3, 11);
  CHECK(a == draw_shifts(n, 3, 11));
  CHECK(a != draw_shifts(n, 4, 11));
  NoiseSpec other = n;
  other.seed = 43;
  CHECK(a != draw_shifts(other, 3, 11));
  // uniform on [-sqrt(3) tau, sqrt(3) tau]: mean 0, variance tau^2
  double sum = 0.0, sq = 0.0;
  const std::size_t count = 20000;
  for (std::size_t k = 0; k < count / 10; ++k) {
    for (double x : draw_shifts(n, k, 10)) {
      CHECK(std::abs(x) <= std::sqrt(3.0) * 0.1);
      sum += x;
      sq += x * x;
    }
  }
  CHECK(std::abs(sum / count) < 4.0 * 0.1 / std::sqrt(double(count)));
  CHECK(sq / count == doctest::Approx(0.01).epsilon(0.05));
  CHECK_THROWS_AS((NoiseSpec{0.1, 1, 0}).validate(), InvalidArgument);
  CHECK_THROWS_AS((NoiseSpec{-0.1, 5, 0}).validate(), InvalidArgument);
}

TEST_CASE("stroboscopic run and noise Monte Carlo") {
  const LZParams lz{1.0, 1.0};
  const Window w{-2.0, 2.0};
  const MeterParams m = meter(2.0, 1.0, 10);
  const PulseSchedule s = build_schedule(w, 1.0, 0.1);
  StrobeOptions opts;
  opts.evolve.sample_interval = 0.0;
  const Trajectory perfect = run_stroboscopic(lz, m, s, w, opts);
  CHECK(perfect.max_trace_error < 1e-8);
  CHECK(perfect.min_eigenvalue > -1e-7);

  SUBCASE("tau = 0 reproduces the perfect run with zero spread") {
    const MCSummary mc = run_noisy_mc(lz, m, s, NoiseSpec{0.0, 3, 7}, w, opts, 1);
    CHECK(mc.mean_final == perfect.final_p());
    CHECK(mc.stderr_final == 0.0);
    for (double e : mc.stderr_p) CHECK(e == 0.0);
  }
  SUBCASE("worker count does not change the result") {
    const NoiseSpec noise{0.05, 4, 99};
    const MCSummary serial = run_noisy_mc(lz, m, s, noise, w, opts, 1);
    const MCSummary threaded = run_noisy_mc(lz, m, s, noise, w, opts, 3);
    CHECK(serial.mean_p == threaded.mean_p);
    CHECK(serial.stderr_p == threaded.stderr_p);
    CHECK(serial.final_t == threaded.final_t);
    CHECK(serial.stderr_final > 0.0);
  }
}

TEST_CASE("cusp contrast sees kinks at the pulses") {
  const Window w{-5.0, 5.0};
  const PulseSchedule s = build_schedule(w, 1.0, 0.2);
  Trajectory t;
  const double h = 0.005;
  for (int k = 0; k <= 2000; ++k) {
    const double x = w.t_begin + k * h;
    // smooth background plus a |.|-shaped dip at each centre
    const double c = std::round(x);
    t.push(x, 0.1 * std::sin(0.3 * x) + 0.05 * std::min(std::abs(x - c), 0.1));
  }
  CHECK(cusp_contrast(t, s) > 2.0);
  Trajectory smooth;
  for (int k = 0; k <= 2000; ++k) {
    const double x = w.t_begin + k * h;
    smooth.push(x, 0.1 * std::sin(0.3 * x));
  }
  CHECK(cusp_contrast(smooth, s) < 2.0);
}

}  // TEST_SUITE
