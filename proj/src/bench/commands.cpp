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


#include "bench/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "bench/config.hpp"
#include "bench/output.hpp"

namespace bench {

using nlohmann::json;

void check(qndlz_status s) {
  if (s != QNDLZ_OK) {
    throw EngineError(s, qndlz_last_error());
  }
}

int exit_code(qndlz_status s) {
  switch (s) {
    case QNDLZ_OK: return 0;
    case QNDLZ_ERR_INVALID_ARGUMENT:
    case QNDLZ_ERR_DIMENSION:
    case QNDLZ_ERR_CONFIG:
    case QNDLZ_ERR_IO:
      return 1;
    case QNDLZ_ERR_VERIFICATION: return 2;
    default: return 3;
  }
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, std::vector<std::string>> kSchema = {
    {"lz", {"g", "eps", "g2_over_eps"}},
    {"meter", {"omega_c", "kappa", "n", "beta", "x0", "n_max"}},
    {"run", {"engine", "window", "t_begin", "t_end", "dt", "sample_interval", "check_every", "abort_on_violation"}},
    {"dephasing", {"gamma0", "gamma0_over_g", "profile", "source"}},
    {"strobe", {"delta_t", "t_p", "convention", "steps_per_pulse", "gap_max_dt"}},
    {"noise", {"tau", "n_it", "seed"}},
    {"nm", {"engine", "n_theta", "n_phi", "refine", "refine_points"}},
    {"sweep", {"task", "axis1", "axis2", "axis3", "axis4", "max_cells"}},
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int hardware_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// Everything a run needs, before unit resolution. Sweep axes edit these fields.
struct Scenario {
  double g = 1.0;
  double eps = 1.0;
  std::optional<double> g2_over_eps;

  qndlz_meter_params meter{1.0, 1.0, 0.0, 0.0, 50};
  std::optional<double> beta;

  std::string engine = "joint";
  double window_units = 5.0;
  std::optional<double> t_begin;
  std::optional<double> t_end;
  qndlz_evolve_options evolve{};
  qndlz_ame_options ame{};

  std::optional<std::vector<double>> gamma0;  // absent: taken from the meter
  bool gamma0_relative = false;              // values in units of g
  std::string profile = "gap_squared";

  qndlz_strobe_params strobe{};
  qndlz_noise noise{0.1, 50, 20240601ULL};

  std::string nm_engine = "joint";
  qndlz_pair_grid grid{};

  qndlz_lz_params lz() const {
    qndlz_lz_params p{g, eps};
    if (g2_over_eps) {
      p.g = std::sqrt(*g2_over_eps * eps);
    }
    return p;
  }

  qndlz_meter_params resolved_meter() const {
    qndlz_meter_params m = meter;
    if (beta) {
      check(qndlz_occupancy_from_beta(*beta, m.omega_c, &m.n));
    }
    return m;
  }

  qndlz_window window() const {
    if (t_begin && t_end) {
      return {*t_begin, *t_end};
    }
    const auto p = lz();
    const double half = window_units * p.g / p.eps;
    return {-half, half};
  }

  std::size_t dephasing_count() const { return gamma0 ? gamma0->size() : 1; }

  qndlz_dephasing dephasing(std::size_t i) const {
    const auto p = lz();
    qndlz_dephasing d{};
    if (!gamma0) {
      const auto m = resolved_meter();
      check(qndlz_dephasing_from_meter(&p, &m, &d));
      if (profile == "constant") {
        const double g0 = d.gamma0;
        check(qndlz_dephasing_constant(g0, &d));
      }
      return d;
    }
    const double value = (*gamma0)[i] * (gamma0_relative ? p.g : 1.0);
    if (profile == "constant") {
      check(qndlz_dephasing_constant(value, &d));
    } else {
      check(qndlz_dephasing_explicit(&p, value, &d));
    }
    return d;
  }

  json dephasing_json() const {
    const auto p = lz();
    json out = json::array();
    for (std::size_t i = 0; i < dephasing_count(); ++i) {
      const auto d = dephasing(i);
      out.push_back({{"gamma0", d.gamma0}, {"gamma0_over_g", d.gamma0 / p.g}, {"g0_spectral", d.g0_spectral},
                     {"source", d.source == QNDLZ_GAMMA_METER ? "meter" : "explicit"}, {"profile", profile}});
    }
    return out;
  }

  // Resolved physical values, echoed next to the raw config.
  json resolved() const {
    const auto p = lz();
    const auto m = resolved_meter();
    const auto w = window();
    return {{"g", p.g},
            {"eps", p.eps},
            {"g2_over_eps", p.g * p.g / p.eps},
            {"omega_c", m.omega_c},
            {"kappa", m.kappa},
            {"n", m.n},
            {"x0", m.x0},
            {"n_max", m.n_max},
            {"t_begin", w.t_begin},
            {"t_end", w.t_end},
            {"meter_initial_state", "thermal(n) factorized with |->_{t_begin}"}};
  }

  void apply(const std::string& name, double v) {
    if (name == "g") {
      g = v;
      g2_over_eps.reset();
    } else if (name == "eps") {
      eps = v;
    } else if (name == "g2_over_eps") {
      g2_over_eps = v;
    } else if (name == "omega_c") {
      meter.omega_c = v;
    } else if (name == "kappa") {
      meter.kappa = v;
    } else if (name == "n") {
      meter.n = v;
      beta.reset();
    } else if (name == "beta") {
      beta = v;
    } else if (name == "x0") {
      meter.x0 = v;
    } else if (name == "n_max") {
      meter.n_max = static_cast<int>(std::lround(v));
    } else if (name == "window") {
      window_units = v;
      t_begin.reset();
      t_end.reset();
    } else if (name == "gamma0") {
      gamma0 = std::vector<double>{v};
      gamma0_relative = false;
    } else if (name == "gamma0_over_g") {
      gamma0 = std::vector<double>{v};
      gamma0_relative = true;
    } else if (name == "delta_t") {
      strobe.delta_t = v;
    } else if (name == "t_p") {
      strobe.t_p = v;
    } else if (name == "tau") {
      noise.tau = v;
    } else {
      throw ConfigError("unknown sweep axis parameter '" + name + "'");
    }
  }
};

const std::vector<std::string> kAxisNames = {"g",  "eps",   "g2_over_eps", "omega_c",      "kappa",   "n",
                                             "beta", "x0",  "n_max",       "window",       "gamma0",  "gamma0_over_g",
                                             "delta_t", "t_p", "tau"};

void read_lz(const Config& c, Scenario& s) {
  s.eps = c.number("lz", "eps", 1.0);
  if (c.has("lz", "g2_over_eps")) {
    if (c.has("lz", "g")) {
      throw ConfigError(c.where("lz", "g2_over_eps") + ": give either g or g2_over_eps, not both");
    }
    s.g2_over_eps = c.number("lz", "g2_over_eps", 1.0);
  } else {
    s.g = c.number("lz", "g", 1.0);
  }
}

void read_meter(const Config& c, Scenario& s) {
  s.meter.omega_c = c.number("meter", "omega_c", 1.0);
  s.meter.kappa = c.number("meter", "kappa", 1.0);
  if (c.has("meter", "beta")) {
    if (c.has("meter", "n")) {
      throw ConfigError(c.where("meter", "beta") + ": give either n or beta, not both");
    }
    s.beta = c.number("meter", "beta", 10.0);
  } else {
    s.meter.n = c.number("meter", "n", 0.0);
  }
  s.meter.x0 = c.number("meter", "x0", 0.0);
  s.meter.n_max = c.integer("meter", "n_max", 50);
}

void read_run(const Config& c, Scenario& s) {
  s.engine = c.text("run", "engine", "joint");
  if (c.has("run", "t_begin") != c.has("run", "t_end")) {
    throw ConfigError(c.where("run", c.has("run", "t_begin") ? "t_begin" : "t_end") +
                      ": t_begin and t_end go together");
  }
  if (c.has("run", "t_begin")) {
    if (c.has("run", "window")) {
      throw ConfigError(c.where("run", "window") + ": give either window or t_begin/t_end");
    }
    s.t_begin = c.number("run", "t_begin", -5.0);
    s.t_end = c.number("run", "t_end", 5.0);
  } else {
    s.window_units = c.number("run", "window", 5.0);
  }
  qndlz_evolve_options_default(&s.evolve);
  qndlz_ame_options_default(&s.ame);
  s.evolve.dt = s.ame.dt = c.number("run", "dt", 0.0);
  s.evolve.sample_interval = s.ame.sample_interval = c.number("run", "sample_interval", 0.05);
  s.evolve.check_every = c.integer("run", "check_every", 1);
  const bool abort = c.flag("run", "abort_on_violation", true);
  s.evolve.abort_on_violation = s.ame.abort_on_violation = abort ? 1 : 0;
  if (s.evolve.check_every < 1) {
    throw ConfigError(c.where("run", "check_every") + ": must be >= 1");
  }
}

void read_dephasing(const Config& c, Scenario& s) {
  s.profile = c.text("dephasing", "profile", "gap_squared");
  if (s.profile != "gap_squared" && s.profile != "constant") {
    throw ConfigError(c.where("dephasing", "profile") + ": expected gap_squared or constant");
  }
  const bool absolute = c.has("dephasing", "gamma0");
  const bool relative = c.has("dephasing", "gamma0_over_g");
  if (absolute && relative) {
    throw ConfigError(c.where("dephasing", "gamma0") + ": give either gamma0 or gamma0_over_g");
  }
  const std::string key = absolute ? "gamma0" : "gamma0_over_g";
  const std::string source = c.text("dephasing", "source", absolute || relative ? "explicit" : "meter");
  if (source == "meter") {
    if (absolute || relative) {
      throw ConfigError(c.where("dephasing", key) + ": source = meter takes gamma0 from the meter section");
    }
    return;
  }
  if (source != "explicit") {
    throw ConfigError(c.where("dephasing", "source") + ": expected explicit or meter");
  }
  if (!absolute && !relative) {
    throw ConfigError(c.where("dephasing", "gamma0_over_g") + ": source = explicit needs a gamma0 list");
  }
  s.gamma0 = c.numbers("dephasing", key);
  s.gamma0_relative = relative;
  if (s.gamma0->empty()) {
    throw ConfigError(c.where("dephasing", key) + ": empty gamma0 list");
  }
}

void read_strobe(const Config& c, Scenario& s) {
  qndlz_strobe_params_default(&s.strobe);
  s.strobe.delta_t = c.number("strobe", "delta_t", 1.0);
  s.strobe.t_p = c.number("strobe", "t_p", 0.1);
  const std::string conv = c.text("strobe", "convention", "amplitude_x0");
  if (conv == "amplitude_x0") {
    s.strobe.convention = QNDLZ_PULSE_AMPLITUDE_X0;
  } else if (conv == "unit_area") {
    s.strobe.convention = QNDLZ_PULSE_UNIT_AREA;
  } else {
    throw ConfigError(c.where("strobe", "convention") + ": expected amplitude_x0 or unit_area");
  }
  s.strobe.steps_per_pulse = c.integer("strobe", "steps_per_pulse", 20);
  s.strobe.gap_max_dt = c.number("strobe", "gap_max_dt", 0.0);
}

void read_noise(const Config& c, const Options& o, Scenario& s) {
  s.noise.tau = c.number("noise", "tau", 0.1);
  s.noise.n_it = c.integer("noise", "n_it", 50);
  if (o.seed) {
    c.echo("noise", "seed", *o.seed);
    s.noise.seed = *o.seed;
  } else {
    s.noise.seed = c.unsigned64("noise", "seed", 20240601ULL);
  }
}

void read_nm(const Config& c, Scenario& s) {
  qndlz_pair_grid_default(&s.grid);
  s.nm_engine = c.text("nm", "engine", "joint");
  if (s.nm_engine != "joint" && s.nm_engine != "ame") {
    throw ConfigError(c.where("nm", "engine") + ": expected joint or ame");
  }
  s.grid.n_theta = c.integer("nm", "n_theta", s.grid.n_theta);
  s.grid.n_phi = c.integer("nm", "n_phi", s.grid.n_phi);
  s.grid.refine = c.flag("nm", "refine", s.grid.refine != 0) ? 1 : 0;
  s.grid.refine_points = c.integer("nm", "refine_points", s.grid.refine_points);
}

Config open_config(const Options& o) {
  Config c = Config::load(o.config);
  for (const auto& s : o.sets) {
    c.set(s);
  }
  c.check_schema(kSchema);
  return c;
}

std::vector<std::string> header(const std::string& command, const Config& c, const Scenario& s) {
  json cfg = c.effective();
  cfg["resolved"] = s.resolved();
  return metadata(command, cfg);
}

std::string footer_seconds(Clock::time_point t0) { return "wall_seconds: " + num(seconds_since(t0)); }

// Unique ownership of C handles.
struct TrajDeleter {
  void operator()(qndlz_trajectory* t) const { qndlz_trajectory_free(t); }
};
using TrajPtr = std::unique_ptr<qndlz_trajectory, TrajDeleter>;

struct NmDeleter {
  void operator()(qndlz_nm_result* r) const { qndlz_nm_free(r); }
};
using NmPtr = std::unique_ptr<qndlz_nm_result, NmDeleter>;

struct McDeleter {
  void operator()(qndlz_mc_result* r) const { qndlz_mc_free(r); }
};
using McPtr = std::unique_ptr<qndlz_mc_result, McDeleter>;

struct VerifyDeleter {
  void operator()(qndlz_verify_report* r) const { qndlz_verify_free(r); }
};
using VerifyPtr = std::unique_ptr<qndlz_verify_report, VerifyDeleter>;

json summary_json(const qndlz_trajectory* t) {
  qndlz_trajectory_summary s{};
  check(qndlz_trajectory_summarize(t, &s));
  return {{"samples", s.samples},
          {"steps", s.steps},
          {"final_P", s.final_p},
          {"max_trace_error", s.max_trace_error},
          {"max_hermiticity_error", s.max_hermiticity_error},
          {"min_eigenvalue", s.min_eigenvalue},
          {"max_meter_tail", s.max_meter_tail}};
}

// Trajectory rows plus warnings into the table.
void trajectory_rows(const qndlz_trajectory* t, bool with_meter, Table& table) {
  qndlz_trajectory_summary s{};
  check(qndlz_trajectory_summarize(t, &s));
  table.columns = {"t", "P", "trace_error", "hermiticity_error", "min_eigenvalue"};
  if (with_meter) {
    table.columns.push_back("quadrature");
    table.columns.push_back("meter_tail");
  }
  for (std::size_t i = 0; i < s.samples; ++i) {
    qndlz_sample x{};
    check(qndlz_trajectory_sample(t, i, &x));
    std::vector<std::string> row = {num(x.t), num(x.p), num(x.trace_error), num(x.hermiticity_error),
                                    num(x.min_eigenvalue)};
    if (with_meter) {
      row.push_back(num(x.quadrature));
      row.push_back(num(x.meter_tail));
    }
    table.rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < s.warnings; ++i) {
    const char* w = qndlz_trajectory_warning(t, i);
    table.meta.push_back(std::string("warning: ") + (w ? w : ""));
    std::cerr << "warning: " << (w ? w : "") << '\n';
  }
}

// ---- sweep ----

struct Axis {
  std::string name;
  std::vector<double> values;
};

Axis parse_axis(const Config& c, const std::string& key) {
  const std::string spec = c.text("sweep", key, "");
  std::istringstream in(spec);
  Axis axis;
  std::string kind;
  in >> axis.name >> kind;
  if (std::find(kAxisNames.begin(), kAxisNames.end(), axis.name) == kAxisNames.end()) {
    throw ConfigError(c.where("sweep", key) + ": unknown parameter '" + axis.name + "'");
  }
  std::vector<double> args;
  std::string token;
  while (in >> token) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || !std::isfinite(v)) {
      throw ConfigError(c.where("sweep", key) + ": bad number '" + token + "'");
    }
    args.push_back(v);
  }
  if (kind == "list") {
    if (args.empty()) {
      throw ConfigError(c.where("sweep", key) + ": empty list");
    }
    axis.values = args;
  } else if (kind == "lin" || kind == "log") {
    if (args.size() != 3 || args[2] < 1 || args[2] != std::floor(args[2])) {
      throw ConfigError(c.where("sweep", key) + ": expected '" + kind + " <from> <to> <count>'");
    }
    const int count = static_cast<int>(args[2]);
    if (kind == "log" && !(args[0] > 0.0 && args[1] > 0.0)) {
      throw ConfigError(c.where("sweep", key) + ": log axis needs positive bounds");
    }
    for (int i = 0; i < count; ++i) {
      const double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
      axis.values.push_back(kind == "lin" ? args[0] + f * (args[1] - args[0])
                                          : std::exp(std::log(args[0]) + f * (std::log(args[1]) - std::log(args[0]))));
    }
  } else {
    throw ConfigError(c.where("sweep", key) + ": expected '<param> lin|log <from> <to> <count>' or '<param> list v...'");
  }
  return axis;
}

struct CellResult {
  std::string status = "ok";
  std::vector<double> values;
  double diag[4] = {kNaN, kNaN, kNaN, kNaN};
  double seconds = 0.0;
};

std::vector<std::string> task_columns(const std::string& task) {
  if (task == "continuous_T") return {"T", "quadrature_at_zero", "effective_gap"};
  if (task == "ame_T") return {"T", "gamma0"};
  if (task == "delta_T") return {"delta_T", "T", "T_LZ", "gamma0"};
  if (task == "nm_measure") return {"N", "best_theta", "best_phi"};
  if (task == "effective_gap") return {"effective_gap"};
  return {};
}

void take_diag(const qndlz_trajectory* t, CellResult& r) {
  qndlz_trajectory_summary s{};
  check(qndlz_trajectory_summarize(t, &s));
  r.diag[0] = s.max_trace_error;
  r.diag[1] = s.max_hermiticity_error;
  r.diag[2] = s.min_eigenvalue;
  r.diag[3] = s.max_meter_tail;
}

void run_cell(const std::string& task, const Scenario& s, CellResult& r) {
  const auto lz = s.lz();
  const auto m = s.resolved_meter();
  const auto w = s.window();
  if (task == "continuous_T") {
    qndlz_continuous_result res{};
    qndlz_trajectory* raw = nullptr;
    check(qndlz_run_continuous(&lz, &m, &w, &s.evolve, &res, &raw));
    TrajPtr t(raw);
    take_diag(t.get(), r);
    r.values = {res.t_final, res.quadrature_at_zero, res.effective_gap};
  } else if (task == "ame_T") {
    const auto d = s.dephasing(0);
    double t_final = kNaN;
    qndlz_trajectory* raw = nullptr;
    check(qndlz_run_ame(&lz, &d, &w, &s.ame, &t_final, &raw));
    TrajPtr t(raw);
    take_diag(t.get(), r);
    r.values = {t_final, d.gamma0};
  } else if (task == "delta_T") {
    const auto d = s.dephasing(0);
    qndlz_relative_infidelity res{};
    check(qndlz_relative_infidelity_run(&lz, &d, &w, s.ame.dt, &res));
    r.values = {res.delta_t, res.t_dephased, res.t_coherent, d.gamma0};
  } else if (task == "nm_measure") {
    qndlz_nm_result* raw = nullptr;
    if (s.nm_engine == "ame") {
      const auto d = s.dephasing(0);
      check(qndlz_blp_ame(&lz, &d, &w, &s.ame, &s.grid, &raw));
    } else {
      check(qndlz_blp_joint(&lz, &m, &w, &s.evolve, &s.grid, &raw));
    }
    NmPtr n(raw);
    qndlz_nm_summary sum{};
    check(qndlz_nm_summarize(n.get(), &sum));
    r.diag[0] = sum.max_trace_error;
    r.diag[1] = sum.max_hermiticity_error;
    r.diag[2] = sum.min_eigenvalue;
    r.diag[3] = sum.max_meter_tail;
    r.values = {sum.n_value, sum.best_theta, sum.best_phi};
  } else {
    double gap = kNaN;
    check(qndlz_effective_gap(&lz, &m, &w, &s.evolve, &gap));
    r.values = {gap};
  }
}

std::string sanitize(std::string s) {
  for (char& ch : s) {
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  }
  return s;
}

}  // namespace

int cmd_trace(const Options& o) {
  const auto t0 = Clock::now();
  const Config c = open_config(o);
  Scenario s;
  read_lz(c, s);
  read_run(c, s);
  const auto lz = s.lz();
  const auto w = s.window();
  if (s.engine == "joint") {
    read_meter(c, s);
    const auto m = s.resolved_meter();
    qndlz_continuous_result res{};
    qndlz_trajectory* raw = nullptr;
    check(qndlz_run_continuous(&lz, &m, &w, &s.evolve, &res, &raw));
    TrajPtr t(raw);
    Table table;
    table.meta = header("trace", c, s);
    table.meta.push_back("result: " + json{{"engine", "joint"},
                                           {"T", res.t_final},
                                           {"quadrature_at_zero", res.quadrature_at_zero},
                                           {"effective_gap", res.effective_gap},
                                           {"diagnostics", summary_json(t.get())}}
                                          .dump());
    trajectory_rows(t.get(), true, table);
    table.footer.push_back(footer_seconds(t0));
    write_table(table, o.out);
    return 0;
  }
  if (s.engine == "coherent") {
    qndlz_trajectory* raw = nullptr;
    check(qndlz_coherent_trajectory(&lz, &w, s.evolve.dt, s.evolve.sample_interval, &raw));
    TrajPtr t(raw);
    Table table;
    table.meta = header("trace", c, s);
    table.meta.push_back("result: " + json{{"engine", "coherent"}, {"diagnostics", summary_json(t.get())}}.dump());
    table.meta.push_back("trace_error column holds the norm error of the pure state");
    trajectory_rows(t.get(), false, table);
    table.footer.push_back(footer_seconds(t0));
    write_table(table, o.out);
    return 0;
  }
  if (s.engine != "ame") {
    throw ConfigError(c.where("run", "engine") + ": expected joint, ame or coherent");
  }
  read_dephasing(c, s);
  if (!s.gamma0) {
    read_meter(c, s);
  }
  const std::size_t count = s.dephasing_count();
  if (count > 1 && (o.out.empty() || o.out == "-")) {
    throw ConfigError("trace: several gamma0 values need --out <path>; files are written as <stem>_<i>.<ext>");
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto t1 = Clock::now();
    const auto d = s.dephasing(i);
    double t_final = kNaN;
    qndlz_trajectory* raw = nullptr;
    check(qndlz_run_ame(&lz, &d, &w, &s.ame, &t_final, &raw));
    TrajPtr t(raw);
    Table table;
    table.meta = header("trace", c, s);
    table.meta.push_back("result: " + json{{"engine", "ame"},
                                           {"index", i},
                                           {"dephasing", s.dephasing_json()[i]},
                                           {"T", t_final},
                                           {"diagnostics", summary_json(t.get())}}
                                          .dump());
    trajectory_rows(t.get(), false, table);
    table.footer.push_back(footer_seconds(t1));
    write_table(table, count > 1 ? indexed_path(o.out, i) : o.out);
  }
  return 0;
}

int cmd_sweep(const Options& o) {
  const auto t0 = Clock::now();
  const Config c = open_config(o);
  Scenario s;
  const std::string task = c.text("sweep", "task", "continuous_T");
  if (task_columns(task).empty()) {
    throw ConfigError(c.where("sweep", "task") +
                      ": expected continuous_T, ame_T, delta_T, nm_measure or effective_gap");
  }
  read_lz(c, s);
  read_meter(c, s);
  read_run(c, s);
  if (task == "ame_T" || task == "delta_T" || task == "nm_measure") {
    read_dephasing(c, s);
  }
  if (task == "nm_measure") {
    read_nm(c, s);
  }
  std::vector<Axis> axes;
  for (const char* key : {"axis1", "axis2", "axis3", "axis4"}) {
    if (c.has("sweep", key)) {
      axes.push_back(parse_axis(c, key));
    }
  }
  if (axes.empty()) {
    throw ConfigError(c.where("sweep", "axis1") + ": a sweep needs at least one axis");
  }
  const int max_cells = c.integer("sweep", "max_cells", 2000);
  std::size_t cells = 1;
  for (const auto& a : axes) {
    cells *= a.values.size();
    if (cells > static_cast<std::size_t>(std::max(max_cells, 0))) {
      throw ConfigError(c.where("sweep", "max_cells") + ": grid exceeds the cell budget of " +
                        std::to_string(max_cells));
    }
  }
  if (o.seed) {
    c.echo("sweep", "seed", *o.seed);
  }
  // Resolve every cell up front so workers never touch the config.
  std::vector<Scenario> scenarios(cells, s);
  std::vector<std::vector<double>> coords(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    std::size_t rest = k;
    coords[k].resize(axes.size());
    for (std::size_t a = axes.size(); a-- > 0;) {
      const std::size_t i = rest % axes[a].values.size();
      rest /= axes[a].values.size();
      coords[k][a] = axes[a].values[i];
    }
    for (std::size_t a = 0; a < axes.size(); ++a) {
      scenarios[k].apply(axes[a].name, coords[k][a]);
    }
  }

  std::vector<CellResult> results(cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells; k = next++) {
      const auto t1 = Clock::now();
      CellResult& r = results[k];
      try {
        run_cell(task, scenarios[k], r);
      } catch (const EngineError& e) {
        r.status = std::string("error:") + qndlz_status_string(e.status) + ": " + sanitize(e.what());
      } catch (const std::exception& e) {
        r.status = std::string("error: ") + sanitize(e.what());
      }
      if (r.values.size() != task_columns(task).size()) {
        r.values.assign(task_columns(task).size(), kNaN);
      }
      r.seconds = seconds_since(t1);
    }
  };
  const int workers = std::max(1, std::min<int>(o.workers > 0 ? o.workers : hardware_workers(),
                                                static_cast<int>(cells)));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& th : pool) {
    th.join();
  }

  Table table;
  table.meta = header("sweep", c, s);
  json axes_json = json::array();
  for (const auto& a : axes) {
    axes_json.push_back({{"name", a.name}, {"values", a.values}});
  }
  table.meta.push_back("sweep: " + json{{"task", task}, {"cells", cells}, {"order", "last axis fastest"},
                                        {"axes", axes_json}}
                                       .dump());
  table.columns.push_back("cell");
  for (const auto& a : axes) {
    table.columns.push_back(a.name);
  }
  table.columns.push_back("status");
  for (const auto& col : task_columns(task)) {
    table.columns.push_back(col);
  }
  for (const char* col : {"max_trace_error", "max_hermiticity_error", "min_eigenvalue", "max_meter_tail"}) {
    table.columns.push_back(col);
  }
  std::size_t failed = 0;
  for (std::size_t k = 0; k < cells; ++k) {
    const auto& r = results[k];
    std::vector<std::string> row = {std::to_string(k)};
    for (double v : coords[k]) row.push_back(num(v));
    row.push_back(r.status);
    for (double v : r.values) row.push_back(num(v));
    for (double v : r.diag) row.push_back(num(v));
    table.rows.push_back(std::move(row));
    table.footer.push_back("cell " + std::to_string(k) + " wall_seconds: " + num(r.seconds));
    failed += r.status != "ok";
  }
  table.footer.push_back("workers: " + std::to_string(workers));
  table.footer.push_back(footer_seconds(t0));
  write_table(table, o.out);
  if (failed > 0) {
    std::cerr << "sweep: " << failed << " of " << cells << " cells failed (see status column)\n";
  }
  return 0;
}

int cmd_strobe(const Options& o) {
  const auto t0 = Clock::now();
  const Config c = open_config(o);
  Scenario s;
  read_lz(c, s);
  read_meter(c, s);
  read_run(c, s);
  read_strobe(c, s);
  const auto lz = s.lz();
  const auto m = s.resolved_meter();
  const auto w = s.window();
  qndlz_strobe_result res{};
  qndlz_trajectory* raw = nullptr;
  check(qndlz_run_stroboscopic(&lz, &m, &w, &s.strobe, &s.evolve, &res, &raw));
  TrajPtr t(raw);
  Table table;
  table.meta = header("strobe", c, s);
  table.meta.push_back("result: " + json{{"T", res.t_final},
                                         {"cusp_contrast", res.cusp_contrast},
                                         {"pulses", res.pulses},
                                         {"diagnostics", summary_json(t.get())}}
                                        .dump());
  trajectory_rows(t.get(), true, table);
  table.footer.push_back(footer_seconds(t0));
  write_table(table, o.out);
  return 0;
}

int cmd_noise_mc(const Options& o) {
  const auto t0 = Clock::now();
  const Config c = open_config(o);
  Scenario s;
  read_lz(c, s);
  read_meter(c, s);
  read_run(c, s);
  read_strobe(c, s);
  read_noise(c, o, s);
  const auto lz = s.lz();
  const auto m = s.resolved_meter();
  const auto w = s.window();
  const int workers = o.workers > 0 ? o.workers : hardware_workers();
  qndlz_mc_result* raw = nullptr;
  check(qndlz_run_noisy_mc(&lz, &m, &w, &s.strobe, &s.evolve, &s.noise, workers, &raw));
  McPtr r(raw);
  qndlz_mc_summary sum{};
  check(qndlz_mc_summarize(r.get(), &sum));
  std::vector<double> finals(static_cast<std::size_t>(sum.n_it));
  for (int k = 0; k < sum.n_it; ++k) {
    check(qndlz_mc_final(r.get(), k, &finals[static_cast<std::size_t>(k)]));
  }
  Table table;
  table.meta = header("noise-mc", c, s);
  table.meta.push_back("result: " + json{{"mean_T", sum.mean_final},
                                         {"stderr_T", sum.stderr_final},
                                         {"n_it", sum.n_it},
                                         {"seed", sum.seed},
                                         {"final_T", finals},
                                         {"max_trace_error", sum.max_trace_error},
                                         {"max_hermiticity_error", sum.max_hermiticity_error},
                                         {"min_eigenvalue", sum.min_eigenvalue},
                                         {"max_meter_tail", sum.max_meter_tail}}
                                        .dump());
  table.columns = {"t", "mean_P", "stderr"};
  for (std::size_t i = 0; i < sum.samples; ++i) {
    double t = 0.0, mean = 0.0, err = 0.0;
    check(qndlz_mc_sample(r.get(), i, &t, &mean, &err));
    table.rows.push_back({num(t), num(mean), num(err)});
  }
  table.footer.push_back("workers: " + std::to_string(workers));
  table.footer.push_back(footer_seconds(t0));
  write_table(table, o.out);
  return 0;
}

int cmd_nm(const Options& o) {
  const auto t0 = Clock::now();
  const Config c = open_config(o);
  Scenario s;
  read_lz(c, s);
  read_run(c, s);
  read_nm(c, s);
  const auto lz = s.lz();
  const auto w = s.window();
  qndlz_nm_result* raw = nullptr;
  json extra = {{"engine", s.nm_engine}};
  if (s.nm_engine == "ame") {
    read_dephasing(c, s);
    if (!s.gamma0) {
      read_meter(c, s);
    }
    const auto d = s.dephasing(0);
    extra["dephasing"] = s.dephasing_json()[0];
    check(qndlz_blp_ame(&lz, &d, &w, &s.ame, &s.grid, &raw));
  } else {
    read_meter(c, s);
    const auto m = s.resolved_meter();
    check(qndlz_blp_joint(&lz, &m, &w, &s.evolve, &s.grid, &raw));
  }
  NmPtr r(raw);
  qndlz_nm_summary sum{};
  check(qndlz_nm_summarize(r.get(), &sum));
  extra["N"] = sum.n_value;
  extra["best_theta"] = sum.best_theta;
  extra["best_phi"] = sum.best_phi;
  extra["pairs_evaluated"] = sum.pairs_evaluated;
  extra["search_space"] = qndlz_nm_search_space(r.get());
  extra["max_trace_error"] = sum.max_trace_error;
  extra["max_hermiticity_error"] = sum.max_hermiticity_error;
  extra["min_eigenvalue"] = sum.min_eigenvalue;
  extra["max_meter_tail"] = sum.max_meter_tail;
  Table table;
  table.meta = header("nm", c, s);
  table.meta.push_back("result: " + extra.dump());
  table.columns = {"t", "D"};
  for (std::size_t i = 0; i < sum.samples; ++i) {
    double t = 0.0, d = 0.0;
    check(qndlz_nm_sample(r.get(), i, &t, &d));
    table.rows.push_back({num(t), num(d)});
  }
  table.footer.push_back(footer_seconds(t0));
  write_table(table, o.out);
  return 0;
}

int cmd_gap(const Options& o) {
  const auto t0 = Clock::now();
  const Config c = open_config(o);
  Scenario s;
  read_lz(c, s);
  read_meter(c, s);
  read_run(c, s);
  const auto lz = s.lz();
  const auto m = s.resolved_meter();
  const auto w = s.window();
  double gap = kNaN;
  check(qndlz_effective_gap(&lz, &m, &w, &s.evolve, &gap));
  Table table;
  table.meta = header("gap", c, s);
  table.columns = {"g", "x0", "effective_gap", "ratio"};
  table.rows.push_back({num(lz.g), num(m.x0), num(gap), num(gap / lz.g)});
  table.footer.push_back(footer_seconds(t0));
  write_table(table, o.out);
  return 0;
}

namespace {

void print_criterion(const qndlz_criterion* c, void*) {
  qndlz_criterion_info info{};
  if (qndlz_criterion_get(c, &info) != QNDLZ_OK) return;
  std::printf("%s %-8s %8.1f s  %s\n", info.passed ? "PASS" : "FAIL", info.id, info.seconds, info.title);
  for (std::size_t j = 0; j < info.checks; ++j) {
    qndlz_check_info k{};
    if (qndlz_criterion_check(c, j, &k) != QNDLZ_OK) continue;
    std::printf("    [%s] %s: %.6g %s %.6g%s%s\n", k.passed ? "ok" : "FAIL", k.name, k.measured, k.relation,
                k.bound, *k.detail ? "  " : "", k.detail);
  }
  std::fflush(stdout);
}

}  // namespace

int cmd_verify(const Options& o) {
  const int workers = o.workers > 0 ? o.workers : hardware_workers();
  qndlz_verify_report* raw = nullptr;
  check(qndlz_verify_run(o.only.c_str(), o.dt_scale, workers, print_criterion, nullptr, &raw));
  VerifyPtr report(raw);
  if (!o.out.empty()) {
    std::FILE* f = o.out == "-" ? stdout : std::fopen(o.out.c_str(), "w");
    if (f == nullptr) {
      throw OutputError(o.out + ": cannot open for writing");
    }
    std::fputs(qndlz_verify_json(report.get()), f);
    std::fputc('\n', f);
    if (f != stdout) std::fclose(f);
  }
  const bool ok = qndlz_verify_all_passed(report.get()) != 0;
  std::printf("verify: %s\n", ok ? "all criteria passed" : "FAILED");
  return ok ? 0 : 2;
}

}  // namespace bench
