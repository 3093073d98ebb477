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


// qndlz-bench: traces, sweeps and the verification suite.

#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "bench/commands.hpp"
#include "bench/config.hpp"
#include "bench/output.hpp"

namespace {

void add_common(CLI::App* sub, bench::Options& o, bool with_config) {
  if (with_config) {
    sub->add_option("--config", o.config, "INI configuration file");
    sub->add_option("--set", o.sets, "Override a config value: section.key=value (repeatable)");
    sub->add_option("--seed", o.seed, "Seed for stochastic parts (overrides the config)");
  }
  sub->add_option("--out", o.out, "Output path ('-' or absent: stdout)");
  sub->add_option("--workers", o.workers, "Worker threads (default: hardware concurrency)")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qndlz-bench: Landau-Zener sweeps under QND measurement"};
  app.set_version_flag("--version", std::string(qndlz_version()));
  app.require_subcommand(1);

  bench::Options o;
  std::function<int(const bench::Options&)> run;

  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const bench::Options&);
  };
  const Entry entries[] = {
      {"trace", "P(t) for one run (joint, ame or coherent engine)", bench::cmd_trace},
      {"sweep", "Parameter grid, one result row per cell", bench::cmd_sweep},
      {"strobe", "Stroboscopic QND pulses", bench::cmd_strobe},
      {"noise-mc", "Stroboscopic pulses with random timing errors", bench::cmd_noise_mc},
      {"nm", "BLP non-Markovianity measure", bench::cmd_nm},
      {"gap", "Effective gap at the anticrossing", bench::cmd_gap},
  };
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, o, true);
    auto fn = e.fn;
    sub->callback([&run, fn] { run = fn; });
  }
  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  add_common(verify, o, false);
  verify->add_option("--only", o.only, "Comma list of ids (analytic, ac1..ac12), 'acceptance' or 'all'");
  verify->add_option("--dt-scale", o.dt_scale, "Scale all automatic step sizes (for failure-path checks)")
      ->check(CLI::PositiveNumber);
  verify->callback([&run] { run = bench::cmd_verify; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    return run(o);
  } catch (const bench::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const bench::OutputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const bench::EngineError& e) {
    std::cerr << "error (" << qndlz_status_string(e.status) << "): " << e.what() << '\n';
    return bench::exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
