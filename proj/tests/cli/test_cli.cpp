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


// End-to-end checks of qndlz-bench: exit codes, CSV layout, determinism.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path kTmp = QNDLZ_TEST_TMP;

struct Result {
  int code = -1;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Result bench(const std::string& args) {
  fs::create_directories(kTmp);
  const fs::path err = kTmp / "stderr.txt";
  const std::string cmd = std::string("\"") + QNDLZ_BENCH_PATH + "\" " + args + " > /dev/null 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(kTmp);
  const fs::path p = kTmp / name;
  std::ofstream(p) << text;
  return p;
}

struct Csv {
  std::vector<std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string body;  // header row and data rows
};

Csv read_csv(const fs::path& p) {
  Csv c;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      if (c.columns.empty()) c.meta.push_back(line.substr(2));
      continue;
    }
    c.body += line + "\n";
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (c.columns.empty()) {
      c.columns = cells;
    } else {
      std::vector<double> row;
      for (const auto& x : cells) row.push_back(std::strtod(x.c_str(), nullptr));
      c.rows.push_back(row);
    }
  }
  return c;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

const char* kSmallJoint =
    "[lz]\ng = 1\neps = 1\n[meter]\nomega_c = 1\nkappa = 1\nn = 0\nx0 = 0\nn_max = 6\n"
    "[run]\nwindow = 3\ndt = 0.004\nsample_interval = 0.1\n";

}  // namespace

TEST_CASE("trace writes a self-describing CSV") {
  const auto cfg = write_config("joint.ini", kSmallJoint);
  const auto out = kTmp / "joint.csv";
  REQUIRE(bench("trace --config " + q(cfg) + " --out " + q(out)).code == 0);
  const Csv c = read_csv(out);
  REQUIRE(c.meta.size() >= 4);
  CHECK(c.meta[0].rfind("qndlz ", 0) == 0);
  bool has_config = false, has_hash = false;
  for (const auto& m : c.meta) {
    has_config |= m.rfind("config: {", 0) == 0;
    has_hash |= m.rfind("config_hash: fnv1a64:", 0) == 0;
  }
  CHECK(has_config);
  CHECK(has_hash);
  CHECK(c.columns[0] == "t");
  CHECK(c.columns[1] == "P");
  CHECK(c.rows.size() == 61);
}

TEST_CASE("decoupled joint trace equals the coherent trace") {
  const auto cfg = write_config("joint.ini", kSmallJoint);
  const auto joint = kTmp / "j.csv", coh = kTmp / "c.csv";
  REQUIRE(bench("trace --config " + q(cfg) + " --out " + q(joint)).code == 0);
  REQUIRE(bench("trace --config " + q(cfg) + " --set run.engine=coherent --out " + q(coh)).code == 0);
  const Csv a = read_csv(joint), b = read_csv(coh);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i][0] == b.rows[i][0]);
    CHECK(std::abs(a.rows[i][1] - b.rows[i][1]) < 1e-6);
  }
}

TEST_CASE("ame trace writes one file per dephasing rate") {
  const auto cfg = write_config(
      "ame.ini", "[lz]\ng2_over_eps = 1\n[run]\nengine = ame\nwindow = 5\n[dephasing]\ngamma0_over_g = 0, 0.5, 2, 10\n");
  const auto out = kTmp / "ame_multi.csv";
  for (int i = 0; i < 4; ++i) fs::remove(kTmp / ("ame_multi_" + std::to_string(i) + ".csv"));
  REQUIRE(bench("trace --config " + q(cfg) + " --out " + q(out)).code == 0);
  double previous = 2.0;
  for (int i = 0; i < 4; ++i) {
    const auto p = kTmp / ("ame_multi_" + std::to_string(i) + ".csv");
    REQUIRE(fs::exists(p));
    const Csv c = read_csv(p);
    CHECK(c.rows.front()[0] == doctest::Approx(-5.0));
    CHECK(c.rows.back()[0] == doctest::Approx(5.0));
    if (i == 3) CHECK(c.rows.back()[1] < previous);
    previous = c.rows.back()[1];
  }
}

TEST_CASE("validation errors exit with 1 and name the field") {
  const auto empty = write_config("empty.ini", "[run]\nengine = ame\n[dephasing]\ngamma0_over_g =\n");
  Result r = bench("trace --config " + q(empty));
  CHECK(r.code == 1);
  CHECK(r.err.find("empty gamma0 list") != std::string::npos);

  const auto typo = write_config("typo.ini", "[lz]\ng = 1\n\n[meter]\nkapa = 2\n");
  r = bench("trace --config " + q(typo));
  CHECK(r.code == 1);
  CHECK(r.err.find("typo.ini:5") != std::string::npos);
  CHECK(r.err.find("kapa") != std::string::npos);

  const auto notnum = write_config("notnum.ini", "[meter]\nkappa = fast\n");
  r = bench("trace --config " + q(notnum));
  CHECK(r.code == 1);
  CHECK(r.err.find("notnum.ini:2: [meter] kappa") != std::string::npos);

  r = bench("trace --set meter.x0");
  CHECK(r.code == 1);
  r = bench("trace --config /nonexistent/file.ini");
  CHECK(r.code == 1);
  r = bench("frobnicate");
  CHECK(r.code == 1);
  const auto strobe_bad = write_config("sb.ini", "[meter]\nx0 = 1\nn_max = 6\n[strobe]\ndelta_t = 0.1\nt_p = 0.2\n");
  CHECK(bench("strobe --config " + q(strobe_bad)).code == 1);
}

TEST_CASE("invariant violation exits with 3") {
  const auto cfg = write_config("blowup.ini",
                                "[meter]\nkappa = 10\nn = 1\nx0 = 1\nn_max = 20\n[run]\nwindow = 2\ndt = 0.2\n");
  CHECK(bench("trace --config " + q(cfg)).code == 3);
}

TEST_CASE("sweep rows are ordered and independent of the worker count") {
  const auto cfg = write_config("sweep.ini", std::string(kSmallJoint) +
                                                 "[sweep]\ntask = continuous_T\naxis1 = x0 list 0 0.5\n"
                                                 "axis2 = kappa log 0.5 2 3\n");
  const auto a = kTmp / "s1.csv", b = kTmp / "s3.csv";
  REQUIRE(bench("sweep --config " + q(cfg) + " --workers 1 --out " + q(a)).code == 0);
  REQUIRE(bench("sweep --config " + q(cfg) + " --workers 3 --out " + q(b)).code == 0);
  const Csv ca = read_csv(a), cb = read_csv(b);
  CHECK(ca.body == cb.body);
  REQUIRE(ca.rows.size() == 6);
  for (std::size_t k = 0; k < 6; ++k) CHECK(ca.rows[k][0] == double(k));
  CHECK(ca.columns[3] == "status");
  CHECK(ca.rows[4][2] == doctest::Approx(1.0));  // x0 = 0.5, kappa = 1
}

TEST_CASE("one-cell sweep reproduces trace") {
  const auto cfg = write_config("one.ini", "[lz]\ng = 1\n[meter]\nkappa = 1\nx0 = 0.5\nn_max = 12\n"
                                           "[run]\nwindow = 3\nsample_interval = 0.1\n"
                                           "[sweep]\ntask = continuous_T\naxis1 = x0 list 0.5\n");
  const auto t = kTmp / "one_trace.csv", s = kTmp / "one_sweep.csv";
  REQUIRE(bench("trace --config " + q(cfg) + " --out " + q(t)).code == 0);
  REQUIRE(bench("sweep --config " + q(cfg) + " --out " + q(s)).code == 0);
  const Csv ct = read_csv(t), cs = read_csv(s);
  CHECK(cs.rows[0][3] == ct.rows.back()[1]);  // bit-identical through %.17g
}

TEST_CASE("failed cells are recorded in the status column") {
  const auto cfg = write_config("fail.ini", "[meter]\nkappa = 10\nn = 1\nx0 = 1\nn_max = 20\n"
                                            "[run]\nwindow = 2\n[sweep]\ntask = continuous_T\naxis1 = n_max list 0 4\n");
  const auto out = kTmp / "fail.csv";
  REQUIRE(bench("sweep --config " + q(cfg) + " --set run.dt=0.002 --out " + q(out)).code == 0);
  const std::string text = slurp(out);
  CHECK(text.find(",error:") != std::string::npos);
  CHECK(text.find(",ok,") != std::string::npos);
}

TEST_CASE("sweep budget is enforced") {
  const auto cfg = write_config("big.ini", "[sweep]\ntask = effective_gap\naxis1 = x0 lin 0 1 100\n"
                                           "axis2 = kappa lin 1 2 100\nmax_cells = 2000\n");
  CHECK(bench("sweep --config " + q(cfg)).code == 1);
}

TEST_CASE("noise-mc is reproducible from the seed") {
  const auto cfg = write_config("mc.ini", "[meter]\nkappa = 2\nx0 = 1\nn_max = 6\n[run]\nwindow = 2\n"
                                          "[strobe]\ndelta_t = 1\nt_p = 0.1\n[noise]\ntau = 0.05\nn_it = 3\n");
  const auto a = kTmp / "mc_a.csv", b = kTmp / "mc_b.csv", c = kTmp / "mc_c.csv";
  REQUIRE(bench("noise-mc --config " + q(cfg) + " --seed 11 --workers 1 --out " + q(a)).code == 0);
  REQUIRE(bench("noise-mc --config " + q(cfg) + " --seed 11 --workers 2 --out " + q(b)).code == 0);
  REQUIRE(bench("noise-mc --config " + q(cfg) + " --seed 12 --out " + q(c)).code == 0);
  CHECK(read_csv(a).body == read_csv(b).body);
  CHECK(read_csv(a).body != read_csv(c).body);
  CHECK(read_csv(a).columns == std::vector<std::string>{"t", "mean_P", "stderr"});
}

TEST_CASE("nm, gap and strobe subcommands") {
  const auto cfg = write_config("misc.ini", "[meter]\nkappa = 1\nx0 = 0.5\nn_max = 8\n[run]\nwindow = 2\n"
                                            "[nm]\nn_theta = 2\nn_phi = 2\nrefine = false\n"
                                            "[strobe]\ndelta_t = 1\nt_p = 0.1\n");
  CHECK(bench("nm --config " + q(cfg) + " --out " + q(kTmp / "nm.csv")).code == 0);
  CHECK(read_csv(kTmp / "nm.csv").columns == std::vector<std::string>{"t", "D"});
  CHECK(bench("gap --config " + q(cfg) + " --out " + q(kTmp / "gap.csv")).code == 0);
  CHECK(read_csv(kTmp / "gap.csv").rows.size() == 1);
  CHECK(bench("strobe --config " + q(cfg) + " --out " + q(kTmp / "strobe.csv")).code == 0);
}

TEST_CASE("verify exit codes") {
  const auto json = kTmp / "report.json";
  CHECK(bench("verify --only analytic --out " + q(json)).code == 0);
  CHECK(slurp(json).find("\"passed\": true") != std::string::npos);
  CHECK(bench("verify --only ac3 --dt-scale 10").code == 2);
  CHECK(bench("verify --only bogus").code == 1);
}
