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


// Acceptance runner: one PASS/FAIL line per criterion AC1-AC12, driven through the C API.
// Usage: acceptance [ids] [workers]   (ids default "acceptance")

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

#include "qndlz/qndlz.h"

namespace {

void report(const qndlz_criterion* c, void*) {
  qndlz_criterion_info info{};
  if (qndlz_criterion_get(c, &info) != QNDLZ_OK) return;
  std::string id = info.id;
  for (auto& ch : id) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  std::printf("%-5s %s  %7.1f s  %s\n", id.c_str(), info.passed ? "PASS" : "FAIL", info.seconds, info.title);
  for (size_t j = 0; j < info.checks; ++j) {
    qndlz_check_info k{};
    if (qndlz_criterion_check(c, j, &k) != QNDLZ_OK) continue;
    std::printf("        %s %s: %.6g %s %.6g%s%s\n", k.passed ? "ok  " : "FAIL", k.name, k.measured, k.relation,
                k.bound, *k.detail ? "  | " : "", k.detail);
  }
  std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
  const char* only = argc > 1 ? argv[1] : "acceptance";
  int workers = argc > 2 ? std::atoi(argv[2]) : 0;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  std::printf("qndlz %s acceptance run (%s, %d workers)\n", qndlz_version(), only, workers);
  qndlz_verify_report* r = nullptr;
  const qndlz_status s = qndlz_verify_run(only, 1.0, workers, report, nullptr, &r);
  if (s != QNDLZ_OK) {
    std::fprintf(stderr, "acceptance: %s: %s\n", qndlz_status_string(s), qndlz_last_error());
    return 1;
  }
  int failed = 0;
  for (size_t i = 0; i < qndlz_verify_count(r); ++i) {
    qndlz_criterion_info info{};
    qndlz_criterion_get(qndlz_verify_criterion(r, i), &info);
    failed += info.passed ? 0 : 1;
  }
  std::printf("%zu criteria, %d failed\n", qndlz_verify_count(r), failed);
  qndlz_verify_free(r);
  return failed == 0 ? 0 : 1;
}
