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

#include <numbers>

#include "qfb/quantum.hpp"
#include "support.hpp"

namespace qfb {
namespace {

using testing::Rng;

CMatrix diag2(double a, double b) {
  const double p[2] = {a, b};
  return CMatrix::diagonal(std::span<const double>(p));
}

TEST(DensityMatrix, Validation) {
  EXPECT_THROW(DensityMatrix::from_matrix(diag2(0.6, 0.6)), DomainError);
  EXPECT_THROW(DensityMatrix::from_matrix(diag2(1.2, -0.2)), DomainError);
  EXPECT_THROW(DensityMatrix::from_matrix(CMatrix(2, 3)), DimensionError);
  EXPECT_THROW(DensityMatrix::basis_state(2, 2), DimensionError);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(diag2(1.0 + 1e-12, -1e-12)));
}

TEST(DensityMatrix, SpectrumAndPurity) {
  const auto rho = DensityMatrix::diagonal(std::vector<double>{0.25, 0.75});
  EXPECT_NEAR(rho.spectrum()[0], 0.75, 1e-15);
  EXPECT_NEAR(rho.purity(), 0.625, 1e-15);
}

TEST(Depolarize, Limits) {
  Rng rng(10);
  const auto rho = testing::random_state(3, rng);
  EXPECT_LE(max_abs_diff(depolarize(rho, 1.0).matrix(), rho.matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(depolarize(rho, 0.0).matrix(), DensityMatrix::maximally_mixed(3).matrix()), 1e-15);
  EXPECT_THROW(depolarize(rho, 1.5), DomainError);
}

TEST(Depolarize, QubitExample) {
  const auto out = depolarize(DensityMatrix::basis_state(2, 0), 0.5);
  EXPECT_LE(max_abs_diff(out.matrix(), diag2(0.75, 0.25)), 1e-15);
}

TEST(Depolarize, KrausFormAgrees) {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const auto rho = testing::random_state(2, rng);
    const double lambda = rng.uniform();
    EXPECT_LE(max_abs_diff(apply_channel(rho, depolarizing_channel(2, lambda)).matrix(),
                           depolarize(rho, lambda).matrix()),
              1e-12);
  }
}

TEST(Depolarize, KeepsEigenvectorsAndOrder) {
  Rng rng(12);
  const auto rho = testing::random_state(3, rng);
  const auto in = hermitian_eigs(rho.matrix());
  const auto out = hermitian_eigs(depolarize(rho, 0.4).matrix());
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(std::abs(inner(in.vectors.column(k), out.vectors.column(k))), 1.0, 1e-9);
  }
}

TEST(AmplitudeDamping, Examples) {
  const auto one = DensityMatrix::basis_state(2, 1);
  EXPECT_LE(max_abs_diff(amplitude_damp(one, 0.0).matrix(), one.matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(amplitude_damp(one, 1.0).matrix(), DensityMatrix::basis_state(2, 0).matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(amplitude_damp(one, 0.8).matrix(), diag2(0.8, 0.2)), 1e-15);
  EXPECT_THROW(amplitude_damp(DensityMatrix::maximally_mixed(3), 0.5), DimensionError);
  EXPECT_THROW(amplitude_damp(one, -0.1), DomainError);
}

TEST(PartialSwap, Limits) {
  EXPECT_LE(max_abs_diff(partial_swap(3, 1.0), CMatrix::identity(9)), 1e-15);
  EXPECT_THROW(partial_swap(2, 1.1), DomainError);
  Rng rng(13);
  const auto rho = testing::random_state(2, rng).matrix();
  const auto eta = testing::random_state(2, rng).matrix();
  const auto full = partial_swap(2, 0.0);
  EXPECT_LE(max_abs_diff(partial_trace(conjugate(full, kron(rho, eta)), 2, 2, Keep::A), eta), 1e-14);
  const auto half = partial_swap(2, 0.5);
  const auto twice = half * half;
  EXPECT_LE(max_abs_diff(partial_trace(conjugate(twice, kron(rho, eta)), 2, 2, Keep::A), eta), 1e-14);
}

TEST(PartialSwap, UnitaryAndExchangeSymmetric) {
  for (std::size_t d : {2, 3, 4}) {
    for (double tau : {0.0, 0.3, 0.5, 0.9}) {
      const auto u = partial_swap(d, tau);
      EXPECT_TRUE(is_unitary(u));
      const auto s = swap_operator(d);
      EXPECT_LE(max_abs_diff(s * u * s, u), 1e-12);
    }
  }
}

TEST(Channels, Completeness) {
  for (const auto& ch : {identity_channel(3), depolarizing_channel(3, 0.2), amplitude_damping_channel(0.3),
                         reset_channel(4, 2), unitary_channel(pauli_y())}) {
    CMatrix sum(ch.dim(), ch.dim());
    for (const auto& k : ch.kraus()) sum += k.adjoint() * k;
    EXPECT_LE(max_abs_diff(sum, CMatrix::identity(ch.dim())), 1e-12);
  }
}

TEST(Channels, ResetToGround) {
  Rng rng(14);
  const KrausChannel reset({CMatrix::unit(2, 0, 0), CMatrix::unit(2, 0, 1)});
  for (int t = 0; t < 10; ++t) {
    EXPECT_LE(max_abs_diff(apply_channel(testing::random_state(2, rng), reset).matrix(),
                           DensityMatrix::basis_state(2, 0).matrix()),
              1e-14);
  }
}

TEST(Channels, IdentityLeavesInput) {
  Rng rng(15);
  const auto rho = testing::random_state(3, rng);
  EXPECT_LE(max_abs_diff(apply_channel(rho, identity_channel(3)).matrix(), rho.matrix()), 1e-15);
}

TEST(Channels, Errors) {
  EXPECT_THROW(KrausChannel({CMatrix::unit(2, 0, 0)}), DomainError);
  EXPECT_THROW(KrausChannel({CMatrix::identity(2), CMatrix::identity(3)}), DimensionError);
  EXPECT_THROW(apply_channel(DensityMatrix::maximally_mixed(2), identity_channel(3)), DimensionError);
  EXPECT_THROW(unitary_channel(diag2(1.0, 0.5)), DomainError);
}

TEST(Unitaries, Su2AndMapping) {
  EXPECT_LE(max_abs_diff(rotation_y(0.0), CMatrix::identity(2)), 1e-15);
  EXPECT_TRUE(is_unitary(su2(0.4, 1.1, -0.3)));
  Rng rng(16);
  for (std::size_t d : {2, 3, 5}) {
    const auto a = testing::random_ket(d, rng);
    const auto b = testing::random_ket(d, rng);
    const auto u = unitary_mapping(a, b);
    EXPECT_TRUE(is_unitary(u));
    const auto ua = qfb::apply(u, a);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(std::abs(ua[i] - b[i]), 0.0, 1e-12);
  }
}

TEST(Controller, Presets) {
  EXPECT_LE(max_abs_diff(ControllerSpec::noisy(3).state().matrix(), CMatrix::identity(3) * cplx(1.0 / 3.0)), 1e-15);
  EXPECT_NEAR(ControllerSpec::clean(2).state().purity(), 1.0, 1e-15);
  const auto t = ControllerSpec::thermal_qubit(0.3);
  ASSERT_TRUE(t.eta0().has_value());
  EXPECT_EQ(*t.eta0(), 0.3);
  EXPECT_NEAR(t.state()(0, 0).real(), 0.3, 1e-15);
  EXPECT_THROW(ControllerSpec::thermal_qubit(1.2), DomainError);
}

}  // namespace
}  // namespace qfb
