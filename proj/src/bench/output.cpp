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


#include "bench/output.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "bench/config.hpp"
#include "qndlz/qndlz.h"

namespace bench {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> metadata(const std::string& command, const nlohmann::json& config) {
  const std::string dump = config.dump();
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016" PRIx64, fnv1a64(dump));
  return {
      std::string("qndlz ") + qndlz_version() + " " + command,
      "units: hbar = 1; g, eps, omega_c, kappa, gamma0 share one frequency unit and times are in its "
      "inverse; run.window is a half-width in units of g/eps",
      "config: " + dump,
      std::string("config_hash: fnv1a64:") + hash,
  };
}

void write_table(const Table& table, const std::string& path) {
  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) {
      throw OutputError(path + ": cannot open for writing");
    }
    out = &file;
  }
  for (const auto& m : table.meta) {
    *out << "# " << m << '\n';
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    *out << (i ? "," : "") << table.columns[i];
  }
  *out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      *out << (i ? "," : "") << row[i];
    }
    *out << '\n';
  }
  for (const auto& f : table.footer) {
    *out << "# " << f << '\n';
  }
  out->flush();
  if (!*out) {
    throw OutputError((path.empty() ? std::string("stdout") : path) + ": write failed");
  }
}

std::string indexed_path(const std::string& path, std::size_t index) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  const std::string suffix = "_" + std::to_string(index);
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

}  // namespace bench
