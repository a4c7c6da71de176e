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

#ifndef QFB_WEAKLIMIT_HPP_
#define QFB_WEAKLIMIT_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "qfb/loop.hpp"

namespace qfb {

/// Generator of one weak cycle per unit coupling angle.
struct EffectiveHamiltonian {
  std::size_t dim;
  CMatrix h;
};

/// Lambda(eta) + eta, Lambda being the stage's action on the controller.
EffectiveHamiltonian effective_hamiltonian(const DensityMatrix& eta, const InLoopStage& stage);

/// Largest max-norm deviation, over the d^2 matrix units, between one cycle at
/// tau = cos^2(dtheta) on both couplings and the first-order map
/// X -> X - i [h, X] dtheta. Requires a noiseless protocol and dtheta >= 0.
double first_order_defect(const FeedbackProtocol& p, double dtheta);

/// Identity followed by the d^2 - 1 generalised Gell-Mann matrices.
std::vector<CMatrix> gell_mann_basis(std::size_t d);

/// Real coordinates of a Hermitian matrix in gell_mann_basis(d).
std::vector<double> hermitian_coordinates(const CMatrix& h);

/// Dimension of the real Lie algebra generated by the identity and the
/// given Hermitian matrices under X, Y -> -i[X, Y].
std::size_t lie_closure_dim(std::span<const CMatrix> generators);

}  // namespace qfb

#endif  // QFB_WEAKLIMIT_HPP_
