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


#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qfb/loop.hpp"
#include "qfb/metrics.hpp"
#include "support.hpp"

namespace qfb {
namespace {

using testing::Rng;

FeedbackProtocol bitflip(double tau, double eta0, InLoopStage stage) {
  return FeedbackProtocol(identity_channel(2), tau, tau, ControllerSpec::thermal_qubit(eta0).state(),
                          std::move(stage));
}

TEST(Entropy, VonNeumann) {
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::basis_state(3, 1)), 0.0, 1e-15);
  for (std::size_t d : {2, 3, 5}) {
    EXPECT_NEAR(von_neumann_entropy(DensityMatrix::maximally_mixed(d), true), 1.0, 1e-14);
  }
  EXPECT_NEAR(von_neumann_entropy(DensityMatrix::diagonal(std::vector<double>{0.75, 0.25})), 0.562335144618808,
              1e-12);
}

TEST(Entropy, Shannon) {
  const double p[3] = {0.5, 0.5, 0.0};
  EXPECT_NEAR(shannon_entropy(p), std::log(2.0), 1e-15);
}

TEST(Entropy, Linear) {
  EXPECT_NEAR(linear_entropy(DensityMatrix::basis_state(2, 0)), 0.0, 1e-15);
  EXPECT_NEAR(linear_entropy(DensityMatrix::maximally_mixed(2)), 0.5, 1e-15);
}

TEST(Fidelity, ToPureState) {
  const std::vector<cplx> plus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  EXPECT_NEAR(fidelity_to_pure(DensityMatrix::pure(plus), plus), 1.0, 1e-15);
  EXPECT_NEAR(fidelity_to_pure(DensityMatrix::maximally_mixed(2), plus), 0.5, 1e-15);
  EXPECT_NEAR(fidelity_to_pure(DensityMatrix::diagonal(std::vector<double>{0.8, 0.2}), plus), 0.5, 1e-15);
  const std::vector<cplx> bad{1.0, 1.0};
  EXPECT_THROW(fidelity_to_pure(DensityMatrix::maximally_mixed(2), bad), DomainError);
}

TEST(Fidelity, ExcitedPopulation) {
  EXPECT_NEAR(excited_population(DensityMatrix::diagonal(std::vector<double>{0.3, 0.7})), 0.7, 1e-15);
}

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  const auto rule = gauss_legendre(8);
  for (int k = 0; k <= 15; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
    const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
    EXPECT_NEAR(sum, exact, 1e-14) << "degree " << k;
  }
}

TEST(HaarBitflip, Examples) {
  EXPECT_NEAR(haar_avg_bitflip_fidelity(bitflip(1.0, 1.0, InLoopStage::coherent(pauli_x()))), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(haar_avg_bitflip_fidelity(bitflip(0.0, 1.0, InLoopStage::coherent(pauli_x()))), 1.0, 1e-12);
  EXPECT_NEAR(haar_avg_bitflip_fidelity(bitflip(0.5, 1.0, InLoopStage::projective({pauli_x(), pauli_x()}))), 0.5,
              1e-12);
}

TEST(HaarBitflip, QuadratureConverged) {
  Rng rng(40);
  for (int t = 0; t < 10; ++t) {
    const auto p = bitflip(rng.uniform(), rng.uniform(), InLoopStage::coherent(testing::random_unitary(2, rng)));
    EXPECT_NEAR(haar_avg_bitflip_fidelity(p, 32), haar_avg_bitflip_fidelity(p, 64), 1e-10);
  }
}

TEST(HaarBitflip, ParallelMatchesSerial) {
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    const auto p = bitflip(rng.uniform(), rng.uniform(), InLoopStage::coherent(testing::random_unitary(2, rng)));
    EXPECT_NEAR(haar_avg_bitflip_fidelity(p), haar_avg_bitflip_fidelity_serial(p), 1e-14);
  }
}

TEST(HaarBitflip, CoherentIndependentOfControllerTemperature) {
  const double base = haar_avg_bitflip_fidelity(bitflip(0.4, 0.0, InLoopStage::coherent(pauli_x())));
  for (double eta0 : {0.3, 1.0}) {
    EXPECT_NEAR(haar_avg_bitflip_fidelity(bitflip(0.4, eta0, InLoopStage::coherent(pauli_x()))), base, 1e-10);
  }
}

TEST(HaarBitflip, CovariantUnderXRotation) {
  // Rotating the controller, measurement basis and feedback unitaries about x
  // leaves the average unchanged because the target commutes with the rotation.
  const double a = 0.7;
  const CMatrix rx{{std::cos(a / 2), cplx(0.0, -std::sin(a / 2))}, {cplx(0.0, -std::sin(a / 2)), std::cos(a / 2)}};
  Rng rng(42);
  for (int t = 0; t < 5; ++t) {
    const auto v0 = testing::random_unitary(2, rng);
    const auto v1 = testing::random_unitary(2, rng);
    const auto eta = testing::random_state(2, rng);
    const FeedbackProtocol plain(identity_channel(2), 0.3, 0.3, eta, InLoopStage::projective({v0, v1}));
    const FeedbackProtocol rotated(identity_channel(2), 0.3, 0.3, DensityMatrix::from_matrix(conjugate(rx, eta.matrix())),
                                   InLoopStage::projective(rx, {conjugate(rx, v0), conjugate(rx, v1)}));
    EXPECT_NEAR(haar_avg_bitflip_fidelity(plain), haar_avg_bitflip_fidelity(rotated), 1e-9);
  }
}

TEST(HaarBitflip, MonteCarloAgrees) {
  const auto p = bitflip(0.3, 0.8, InLoopStage::projective({pauli_x(), pauli_x()}));
  const auto mc = haar_avg_bitflip_fidelity_mc(p, 20000, 9);
  EXPECT_NEAR(mc.mean, haar_avg_bitflip_fidelity(p), 4.0 * mc.standard_error);
  EXPECT_GT(mc.standard_error, 0.0);
}

TEST(HaarBitflip, Errors) {
  const auto p = bitflip(0.3, 1.0, InLoopStage::coherent(pauli_x()));
  EXPECT_THROW(haar_avg_bitflip_fidelity(p, 3), DomainError);
  const FeedbackProtocol noisy(depolarizing_channel(2, 0.5), 0.3, 0.3, DensityMatrix::basis_state(2, 0),
                               InLoopStage::coherent(pauli_x()));
  EXPECT_THROW(haar_avg_bitflip_fidelity(noisy), DomainError);
  const FeedbackProtocol qutrit(identity_channel(3), 0.3, 0.3, DensityMatrix::basis_state(3, 0),
                                InLoopStage::coherent(CMatrix::identity(3)));
  EXPECT_THROW(haar_avg_bitflip_fidelity(qutrit), DimensionError);
}

}  // namespace
}  // namespace qfb
