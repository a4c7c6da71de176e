// Copyright 2026 The qfeedback Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>

#include "qfb/app/validation.hpp"

#ifndef QFB_CLI_PATH
#error "QFB_CLI_PATH must name the qfeedback executable"
#endif

namespace {

using qfb::app::CheckResult;
namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

CheckResult cli_determinism_and_validate() {
  CheckResult r;
  const fs::path dir = fs::temp_directory_path() / "qfb_acceptance";
  fs::create_directories(dir);
  const std::string cli = QFB_CLI_PATH;
  const std::string common = " trajectories --scenario mf-noisy-cooling --d 3 --tau 0.6 --lambda 0.7"
                             " --ntraj 200 --steps 60 --seed 2718 --out ";
  const int rc1 = run(cli + common + (dir / "a.csv").string() + " > /dev/null");
  const int rc2 = run(cli + common + (dir / "b.csv").string() + " --threads 1 > /dev/null");
  const std::string a = slurp(dir / "a.csv");
  const bool identical = rc1 == 0 && rc2 == 0 && !a.empty() && a == slurp(dir / "b.csv");

  const auto t0 = std::chrono::steady_clock::now();
  const int rc_validate = run(cli + " validate > " + (dir / "validate.txt").string());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fs::remove_all(dir);

  r.passed = identical && rc_validate == 0 && secs < 120.0;
  r.detail = std::string("two CLI runs ") + (identical ? "byte-identical" : "DIFFER") + " (" +
             std::to_string(a.size()) + " bytes); validate exit " + std::to_string(rc_validate) + " in " +
             std::to_string(secs).substr(0, 5) + " s (limit 120 s)";
  return r;
}

}  // namespace

int main() {
  using namespace qfb::app;
  const int threads = 0;
  const std::pair<int, std::function<CheckResult()>> criteria[] = {
      {1, check_oracle_grid},
      {2, check_cooling_spot_value},
      {3, check_cf_no_cooling},
      {4, check_clean_crossover},
      {5, check_purity_dichotomy},
      {6, check_amplitude_damping},
      {7, check_bitflip},
      {8, [] { return check_conditional_statistics(threads); }},
      {9, check_weak_limit},
      {10, check_cooling_rate},
      {11, cli_determinism_and_validate},
  };
  int failures = 0;
  for (const auto& [n, fn] : criteria) {
    const auto r = timed("criterion " + std::to_string(n), fn);
    if (!r.passed) ++failures;
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << n << " [" << std::to_string(r.seconds).substr(0, 5)
              << " s]: " << r.detail << std::endl;
  }
  std::cout << (failures == 0 ? "all acceptance criteria passed" : "acceptance criteria failed: ")
            << (failures == 0 ? "" : std::to_string(failures)) << std::endl;
  return failures == 0 ? 0 : 1;
}
