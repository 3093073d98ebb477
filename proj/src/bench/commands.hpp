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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qndlz/qndlz.h"

namespace bench {

/// A failed engine call, carrying the C API status.
class EngineError : public std::runtime_error {
 public:
  EngineError(qndlz_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  qndlz_status status;
};

/// Throws EngineError unless s is QNDLZ_OK.
void check(qndlz_status s);

/// 1 for bad input, 3 for invariant violations and other runtime failures.
int exit_code(qndlz_status s);

struct Options {
  std::string config;
  std::string out;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  int workers = 0;  // 0: hardware concurrency
  std::string only = "all";
  double dt_scale = 1.0;
};

int cmd_trace(const Options& o);
int cmd_sweep(const Options& o);
int cmd_strobe(const Options& o);
int cmd_noise_mc(const Options& o);
int cmd_nm(const Options& o);
int cmd_gap(const Options& o);
int cmd_verify(const Options& o);

}  // namespace bench
