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

// Verification suite: formula-level checks plus the acceptance criteria AC1-AC12.

#include <functional>
#include <string>
#include <vector>

namespace qndlz {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  std::string relation;  // how measured is compared with bound, e.g. "<=", ">", "info"
  bool passed = false;
  std::string detail;
};

struct CriterionResult {
  std::string id;  // "analytic", "ac1", ...
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  std::vector<CheckResult> checks;
};

struct VerifyOptions {
  // Comma-separated ids ("ac3,ac5"), "analytic", "acceptance" or "all" (default).
  std::string only = "all";
  // Scales every automatic step size; values > 1 deliberately under-resolve the runs.
  double dt_scale = 1.0;
  int workers = 1;
};

/// All ids in execution order.
std::vector<std::string> verification_ids();

using CriterionCallback = std::function<void(const CriterionResult&)>;

/// Runs the selected criteria, reporting each one as it completes. Unknown ids throw
/// InvalidArgument.
std::vector<CriterionResult> run_verification(const VerifyOptions& opts, const CriterionCallback& on_done = {});

/// Machine-readable report.
std::string verification_report_json(const std::vector<CriterionResult>& results);

}  // namespace qndlz
