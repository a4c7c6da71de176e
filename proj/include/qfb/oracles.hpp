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

// Closed-form results for the feedback protocols. Plain arithmetic only, no
// linear algebra, so that nothing is shared with the simulator. Couplings are
// transmissivities tau in [0, 1].

#ifndef QFB_ORACLES_HPP_
#define QFB_ORACLES_HPP_

#include <cstddef>
#include <vector>

namespace qfb {

/// Steady spectrum (descending) of measurement feedback with a maximally mixed
/// controller, every outcome rotated onto |0>, depolarising noise lambda.
std::vector<double> oracle_mf_noisy_steady(std::size_t d, double tau, double lambda);

/// Steady spectrum (descending) of coherent feedback with a pure controller
/// |0> and identity in-loop unitary.
std::vector<double> oracle_cf_clean_steady(std::size_t d, double tau, double lambda);

struct EntropyPair {
  double mf;  // linear entropy, measurement feedback
  double cf;  // linear entropy, coherent feedback
};

/// Qubit, controller |0>: steady linear entropies of reset-to-|0> measurement
/// feedback and identity coherent feedback.
EntropyPair oracle_clean_qubit_entropies(double tau, double lambda);

/// Qubit, controller diag(eta0, 1 - eta0). The measurement side resets onto
/// the controller's dominant eigenvector.
EntropyPair oracle_eta_entropies(double tau, double lambda, double eta0);
/// Same, but the measurement side always resets onto |0>.
double oracle_mf_eta_entropy_fixed_target(double tau, double lambda, double eta0);

/// |0> population of the coherent-feedback steady state for a pure |0>
/// controller and in-loop unitary su2(chi, phi1, phi2). Exact only where that
/// steady state is diagonal: chi a multiple of pi/2.
double oracle_cf_clean_general_qubit(double tau, double lambda, double chi, double phi1);

struct DampingOccupations {
  double rho11_chi0;     // coherent feedback, identity in-loop
  double rho11_chipi2;   // coherent feedback, in-loop rotation by pi/2
  double rho11_mf;       // measurement feedback resetting the controller to |1>
  double cf_crossover_tau;  // rho11_chi0 exceeds rho11_mf above this coupling
  bool cf_beats_mf;
};

/// Excited-state protection under amplitude damping gamma; controller I/2.
DampingOccupations oracle_ad_occupations(double tau, double gamma);

/// Haar-averaged bit-flip fidelity of the two-outcome measurement with
/// Kraus operators sigma_x diag(a, b) and sigma_x diag(sqrt(1-a^2), sqrt(1-b^2)).
double oracle_bitflip_fidelity(double tau, double a, double b);

struct ConditionalCooling {
  double p0;       // probability of outcome 0
  double alpha00;  // dominant output eigenvalue after outcome 0
  double alpha01;  // dominant output eigenvalue after any other outcome
};

/// One conditional step of noisy-controller cooling from a diagonal input
/// whose largest eigenvalue alpha_in sits on |0> and the rest are equal.
ConditionalCooling oracle_conditional_cooling(std::size_t d, double tau, double lambda,
                                              double alpha_in);

}  // namespace qfb

#endif  // QFB_ORACLES_HPP_
