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
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "qndlz/qndlz.h"

TEST_CASE("version and status strings") {
  CHECK(std::strlen(qndlz_version()) > 0);
  CHECK(std::string(qndlz_status_string(QNDLZ_ERR_INVARIANT)) == "invariant violation");
}

TEST_CASE("invalid input maps to status codes") {
  double out = 0.0;
  const qndlz_lz_params bad{-1.0, 1.0};
  CHECK(qndlz_lz_infidelity_asymptotic(&bad, &out) == QNDLZ_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(qndlz_last_error()) > 0);
  CHECK(qndlz_lz_infidelity_asymptotic(nullptr, &out) == QNDLZ_ERR_INVALID_ARGUMENT);
  const qndlz_lz_params ok{1.0, 1.0};
  CHECK(qndlz_lz_infidelity_asymptotic(&ok, &out) == QNDLZ_OK);
  CHECK(std::string(qndlz_last_error()).empty());
  CHECK(out == doctest::Approx(std::exp(-std::numbers::pi / 2)));
  qndlz_trajectory_summary s{};
  CHECK(qndlz_trajectory_summarize(nullptr, &s) == QNDLZ_ERR_INVALID_HANDLE);
  const qndlz_window w{1.0, -1.0};
  qndlz_trajectory* t = nullptr;
  CHECK(qndlz_coherent_trajectory(&ok, &w, 0.0, 0.0, &t) == QNDLZ_ERR_INVALID_ARGUMENT);
  CHECK(t == nullptr);
  qndlz_trajectory_free(nullptr);
}

TEST_CASE("coherent and joint trajectories") {
  const qndlz_lz_params lz{1.0, 1.0};
  const qndlz_window w{-3.0, 3.0};
  qndlz_trajectory* coh = nullptr;
  REQUIRE(qndlz_coherent_trajectory(&lz, &w, 0.004, 0.1, &coh) == QNDLZ_OK);
  qndlz_trajectory_summary cs{};
  REQUIRE(qndlz_trajectory_summarize(coh, &cs) == QNDLZ_OK);
  CHECK(cs.samples == 61);

  const qndlz_meter_params m{1.0, 1.0, 0.0, 0.0, 6};
  qndlz_evolve_options opts;
  qndlz_evolve_options_default(&opts);
  opts.dt = 0.004;
  opts.sample_interval = 0.1;
  qndlz_continuous_result res{};
  qndlz_trajectory* joint = nullptr;
  REQUIRE(qndlz_run_continuous(&lz, &m, &w, &opts, &res, &joint) == QNDLZ_OK);
  qndlz_trajectory_summary js{};
  REQUIRE(qndlz_trajectory_summarize(joint, &js) == QNDLZ_OK);
  REQUIRE(js.samples == cs.samples);
  for (size_t i = 0; i < js.samples; ++i) {
    qndlz_sample a{}, b{};
    REQUIRE(qndlz_trajectory_sample(coh, i, &a) == QNDLZ_OK);
    REQUIRE(qndlz_trajectory_sample(joint, i, &b) == QNDLZ_OK);
    CHECK(a.t == b.t);
    CHECK(std::abs(a.p - b.p) < 1e-9);
  }
  qndlz_sample x{};
  CHECK(qndlz_trajectory_sample(joint, js.samples, &x) == QNDLZ_ERR_INVALID_ARGUMENT);
  CHECK(res.t_final == js.final_p);
  CHECK(res.effective_gap == doctest::Approx(1.0));
  qndlz_trajectory_free(coh);
  qndlz_trajectory_free(joint);
}

TEST_CASE("invariant violations surface as QNDLZ_ERR_INVARIANT") {
  const qndlz_lz_params lz{1.0, 1.0};
  const qndlz_window w{-2.0, 2.0};
  const qndlz_meter_params m{1.0, 10.0, 1.0, 1.0, 20};
  qndlz_evolve_options opts;
  qndlz_evolve_options_default(&opts);
  opts.dt = 0.2;
  qndlz_continuous_result res{};
  CHECK(qndlz_run_continuous(&lz, &m, &w, &opts, &res, nullptr) == QNDLZ_ERR_INVARIANT);
}

TEST_CASE("dephasing, autocorrelation and Avron helpers") {
  const qndlz_lz_params lz{1.0, 1.0};
  const qndlz_meter_params m{1.0, 2.0, 0.0, 1.0, 30};
  double g0 = 0.0;
  REQUIRE(qndlz_spectral_g0(&m, &g0) == QNDLZ_OK);
  CHECK(g0 == doctest::Approx(1.0));
  qndlz_dephasing d{};
  REQUIRE(qndlz_dephasing_from_meter(&lz, &m, &d) == QNDLZ_OK);
  CHECK(d.gamma0 == doctest::Approx(0.5));
  CHECK(d.source == QNDLZ_GAMMA_METER);
  const double tau[3] = {0.0, 0.5, 1.0};
  double re[3], im[3], tail = -1.0;
  REQUIRE(qndlz_regression_autocorrelation(&m, tau, 3, 0.0, re, im, &tail) == QNDLZ_OK);
  for (int k = 0; k < 3; ++k) {
    double are = 0.0, aim = 0.0;
    REQUIRE(qndlz_analytic_autocorrelation(&m, tau[k], &are, &aim) == QNDLZ_OK);
    CHECK(std::abs(re[k] - are) < 1e-8);
    CHECK(std::abs(im[k] - aim) < 1e-8);
  }
  double q = 0.0;
  CHECK(qndlz_avron_q(-1.0, &q) == QNDLZ_ERR_INVALID_ARGUMENT);
  REQUIRE(qndlz_avron_q(1.0, &q) == QNDLZ_OK);
  CHECK(q > 0.0);
  qndlz_dephasing e{};
  REQUIRE(qndlz_dephasing_explicit(&lz, 10.0, &e) == QNDLZ_OK);
  const qndlz_window w{-5.0, 5.0};
  qndlz_relative_infidelity r{};
  REQUIRE(qndlz_relative_infidelity_run(&lz, &e, &w, 0.0, &r) == QNDLZ_OK);
  CHECK(r.delta_t < 0.0);
  double t_final = -1.0;
  qndlz_ame_options ao;
  qndlz_ame_options_default(&ao);
  REQUIRE(qndlz_run_ame(&lz, &e, &w, &ao, &t_final, nullptr) == QNDLZ_OK);
  CHECK(t_final == doctest::Approx(r.t_dephased));
}

TEST_CASE("BLP and Monte Carlo handles") {
  const qndlz_lz_params lz{1.0, 1.0};
  const qndlz_window w{-2.0, 2.0};
  qndlz_dephasing c{};
  REQUIRE(qndlz_dephasing_constant(0.5, &c) == QNDLZ_OK);
  qndlz_pair_grid grid;
  qndlz_pair_grid_default(&grid);
  grid.refine = 0;
  qndlz_nm_result* nm = nullptr;
  REQUIRE(qndlz_blp_ame(&lz, &c, &w, nullptr, &grid, &nm) == QNDLZ_OK);
  qndlz_nm_summary ns{};
  REQUIRE(qndlz_nm_summarize(nm, &ns) == QNDLZ_OK);
  CHECK(ns.n_value <= 1e-10);
  CHECK(ns.pairs_evaluated == 36);
  double t = 0.0, dv = 0.0;
  REQUIRE(qndlz_nm_sample(nm, 0, &t, &dv) == QNDLZ_OK);
  CHECK(dv == doctest::Approx(1.0));
  qndlz_nm_free(nm);

  const qndlz_meter_params m{1.0, 2.0, 0.0, 1.0, 8};
  qndlz_strobe_params sp;
  qndlz_strobe_params_default(&sp);
  sp.delta_t = 1.0;
  sp.t_p = 0.1;
  const qndlz_noise noise{0.05, 3, 5};
  qndlz_mc_result* mc = nullptr;
  REQUIRE(qndlz_run_noisy_mc(&lz, &m, &w, &sp, nullptr, &noise, 2, &mc) == QNDLZ_OK);
  qndlz_mc_summary ms{};
  REQUIRE(qndlz_mc_summarize(mc, &ms) == QNDLZ_OK);
  CHECK(ms.n_it == 3);
  CHECK(ms.seed == 5);
  double f = 0.0;
  CHECK(qndlz_mc_final(mc, 3, &f) == QNDLZ_ERR_INVALID_ARGUMENT);
  REQUIRE(qndlz_mc_final(mc, 2, &f) == QNDLZ_OK);
  qndlz_mc_free(mc);

  sp.t_p = 2.0;  // longer than the spacing
  qndlz_strobe_result sr{};
  CHECK(qndlz_run_stroboscopic(&lz, &m, &w, &sp, nullptr, &sr, nullptr) == QNDLZ_ERR_INVALID_ARGUMENT);
}

namespace {
void count_cb(const qndlz_criterion* c, void* user) {
  qndlz_criterion_info info{};
  if (qndlz_criterion_get(c, &info) == QNDLZ_OK) {
    static_cast<std::vector<std::string>*>(user)->push_back(info.id);
  }
}
}  // namespace

TEST_CASE("verification through the C API") {
  CHECK(qndlz_verify_id_count() >= 13);
  CHECK(std::string(qndlz_verify_id(0)) == "analytic");
  CHECK(qndlz_verify_id(1000) == nullptr);
  std::vector<std::string> seen;
  qndlz_verify_report* r = nullptr;
  REQUIRE(qndlz_verify_run("analytic", 1.0, 1, count_cb, &seen, &r) == QNDLZ_OK);
  CHECK(seen == std::vector<std::string>{"analytic"});
  CHECK(qndlz_verify_count(r) == 1);
  CHECK(qndlz_verify_all_passed(r) == 1);
  qndlz_check_info k{};
  REQUIRE(qndlz_criterion_check(qndlz_verify_criterion(r, 0), 0, &k) == QNDLZ_OK);
  CHECK(k.passed == 1);
  CHECK(std::string(qndlz_verify_json(r)).find("\"criteria\"") != std::string::npos);
  qndlz_verify_free(r);
  CHECK(qndlz_verify_run("nonsense", 1.0, 1, nullptr, nullptr, &r) == QNDLZ_ERR_INVALID_ARGUMENT);
}
