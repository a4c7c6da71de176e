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

#ifndef QFB_METRICS_HPP_
#define QFB_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qfb/loop.hpp"
#include "qfb/quantum.hpp"

namespace qfb {

/// -sum p ln p over a spectrum, 0 ln 0 = 0.
double shannon_entropy(std::span<const double> probabilities);
/// Natural-log entropy; divided by ln d when `normalised` (d > 1).
double von_neumann_entropy(const DensityMatrix& rho, bool normalised = false);
/// 1 - tr(rho^2)
double linear_entropy(const DensityMatrix& rho);
/// <psi|rho|psi>; psi must have unit norm within 1e-10.
double fidelity_to_pure(const DensityMatrix& rho, std::span<const cplx> psi);
/// Population of |1>.
double excited_population(const DensityMatrix& rho);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
/// n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(std::size_t n);

/// Haar-averaged fidelity of the cycle output with sigma_x|psi>, for qubit
/// protocols without noise. Gauss-Legendre in cos(polar angle) times a
/// trapezoid rule in the azimuth, `nodes` points per axis. OpenMP over the
/// polar nodes.
double haar_avg_bitflip_fidelity(const FeedbackProtocol& p, std::size_t nodes = 32);
/// Single-threaded reference of the same quadrature.
double haar_avg_bitflip_fidelity_serial(const FeedbackProtocol& p, std::size_t nodes = 32);

struct MonteCarloEstimate {
  double mean;
  double standard_error;
};
/// Same average from `samples` Haar-random inputs (normalised complex
/// Gaussian pairs).
MonteCarloEstimate haar_avg_bitflip_fidelity_mc(const FeedbackProtocol& p, std::size_t samples,
                                                std::uint64_t seed);

}  // namespace qfb

#endif  // QFB_METRICS_HPP_
