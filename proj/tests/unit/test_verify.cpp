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

#include <algorithm>
#include <chrono>

#include <json.hpp>

#include "core/errors.hpp"
#include "core/verify.hpp"

using namespace qndlz;

TEST_SUITE("verify") {

TEST_CASE("ids") {
  const auto ids = verification_ids();
  CHECK(ids.front() == "analytic");
  for (int k = 1; k <= 12; ++k) {
    CHECK(std::find(ids.begin(), ids.end(), "ac" + std::to_string(k)) != ids.end());
  }
  VerifyOptions o;
  o.only = "ac99";
  CHECK_THROWS_AS(run_verification(o), InvalidArgument);
}

TEST_CASE("analytic subset is fast and passes") {
  VerifyOptions o;
  o.only = "analytic";
  const auto t0 = std::chrono::steady_clock::now();
  int calls = 0;
  const auto results = run_verification(o, [&](const CriterionResult&) { ++calls; });
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(s < 1.0);
  REQUIRE(results.size() == 1);
  CHECK(calls == 1);
  CHECK(results[0].passed);
  CHECK_FALSE(results[0].checks.empty());

  const auto report = nlohmann::json::parse(verification_report_json(results));
  CHECK(report["passed"] == true);
  const auto& check = report["criteria"][0]["checks"][0];
  CHECK(check.contains("name"));
  CHECK(check.contains("measured"));
  CHECK(check.contains("bound"));
  CHECK(check.contains("passed"));
}

TEST_CASE("an under-resolved run is reported as a failure") {
  VerifyOptions o;
  o.only = "ac3";
  o.dt_scale = 10.0;
  const auto results = run_verification(o);
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].passed);
}

}  // TEST_SUITE
