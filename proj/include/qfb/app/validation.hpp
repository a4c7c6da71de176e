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

// Simulator-versus-closed-form checks. `qfeedback validate` runs all of them;
// the acceptance test binary calls them one at a time.

#ifndef QFB_APP_VALIDATION_HPP_
#define QFB_APP_VALIDATION_HPP_

#include <functional>
#include <string>
#include <vector>

namespace qfb::app {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Every closed form against its simulator pipeline on >= 100 random points.
CheckResult check_oracle_grid();
/// Noisy-controller MF spectrum at d = 2, tau = lambda = 1/2, two solvers.
CheckResult check_cooling_spot_value();
/// Coherent feedback with a maximally mixed controller never lowers entropy.
CheckResult check_cf_no_cooling();
/// Clean-controller S_MF - S_CF changes sign at tau = 1/3.
CheckResult check_clean_crossover();
/// Pure steady state from CF at tau = 1/2, never from projective MF.
CheckResult check_purity_dichotomy();
/// Amplitude-damping occupations and the CF/MF boundary.
CheckResult check_amplitude_damping();
/// Bit-flip Haar fidelities and the diagonal optimum of the POVM surface.
CheckResult check_bitflip();
/// Trajectory ensembles against conditional closed forms and majorisation.
CheckResult check_conditional_statistics(int threads);
/// Quadratic first-order defect and Lie-closure dimensions.
CheckResult check_weak_limit();
/// Iterations to cool scale as 1 / (1 - tau).
CheckResult check_cooling_rate();
/// Same seed, same CSV; thread count does not change results.
CheckResult check_determinism(int threads);
/// Cross-checks between the cycle implementations.
CheckResult check_cycle_consistency();

/// Runs fn and records its wall time; exceptions become failures.
CheckResult timed(const std::string& name, const std::function<CheckResult()>& fn);

std::vector<CheckResult> run_validation(int threads);

}  // namespace qfb::app

#endif  // QFB_APP_VALIDATION_HPP_
