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

#include <numeric>

#include "qfb/linops.hpp"
#include "qfb/quantum.hpp"
#include "support.hpp"

namespace qfb {
namespace {

using testing::Rng;

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(max_abs_diff(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)), 0.0);
}

TEST(Kron, DiagonalBlocks) {
  const double p[2] = {1.0, 0.0};
  const double q[2] = {0.3, 0.7};
  const double want[4] = {0.3, 0.7, 0.0, 0.0};
  const CMatrix got = kron(CMatrix::diagonal(std::span<const double>(p)), CMatrix::diagonal(std::span<const double>(q)));
  EXPECT_EQ(max_abs_diff(got, CMatrix::diagonal(std::span<const double>(want))), 0.0);
}

TEST(Kron, FlipsBothQubits) {
  const auto out = qfb::apply(kron(pauli_x(), pauli_x()), basis_vector(4, 0));
  const auto want = basis_vector(4, 3);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(std::abs(out[i] - want[i]), 0.0);
}

TEST(Kron, AssociativeOnRandomTriples) {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto a = testing::random_matrix(2, 2, rng);
    const auto b = testing::random_matrix(2, 2, rng);
    const auto c = testing::random_matrix(2, 2, rng);
    EXPECT_LE(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
  }
}

TEST(PartialTrace, ProductState) {
  Rng rng(2);
  const auto rho = testing::random_state(2, rng).matrix();
  const auto eta = testing::random_state(3, rng).matrix();
  EXPECT_LE(max_abs_diff(partial_trace(kron(rho, eta), 2, 3, Keep::A), rho), 1e-12);
  EXPECT_LE(max_abs_diff(partial_trace(kron(rho, eta), 2, 3, Keep::B), eta), 1e-12);
}

TEST(PartialTrace, SwapIdentities) {
  Rng rng(3);
  const CMatrix s = swap_operator(2);
  for (int t = 0; t < 10; ++t) {
    const auto a = testing::random_matrix(2, 2, rng);
    const auto b = testing::random_matrix(2, 2, rng);
    EXPECT_LE(max_abs_diff(partial_trace(s * kron(a, b), 2, 2, Keep::A), b * a), 1e-12);
    EXPECT_LE(max_abs_diff(partial_trace(commutator(s, kron(a, b)), 2, 2, Keep::A), commutator(b, a)), 1e-12);
  }
}

TEST(PartialTrace, BothFactorsGiveFullTrace) {
  Rng rng(4);
  const auto m = testing::random_matrix(6, 6, rng);
  const auto reduced = partial_trace(partial_trace(m, 2, 3, Keep::A), 1, 2, Keep::A);
  EXPECT_LE(std::abs(reduced(0, 0) - m.trace()), 1e-12);
}

TEST(PartialTrace, RejectsWrongShape) {
  EXPECT_THROW(partial_trace(CMatrix::identity(5), 2, 3, Keep::A), DimensionError);
}

TEST(Stacking, RoundTripsAndColumnOrder) {
  CMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  const auto v = stack_columns(m);
  EXPECT_EQ(v[1], cplx(3.0));
  EXPECT_EQ(max_abs_diff(unstack_columns(v, 2), m), 0.0);
}

TEST(HermitianEigs, Diagonal) {
  const double p[2] = {0.3, 0.7};
  const auto e = hermitian_eigs(CMatrix::diagonal(std::span<const double>(p)));
  EXPECT_NEAR(e.values[0], 0.7, 1e-15);
  EXPECT_NEAR(e.values[1], 0.3, 1e-15);
  EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-15);
}

TEST(HermitianEigs, PauliX) {
  const auto e = hermitian_eigs(pauli_x());
  EXPECT_NEAR(e.values[0], 1.0, 1e-14);
  EXPECT_NEAR(e.values[1], -1.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 0) - e.vectors(1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e.vectors(0, 1) + e.vectors(1, 1)), 0.0, 1e-14);
}

TEST(HermitianEigs, ReconstructsRandomMatrices) {
  Rng rng(5);
  for (std::size_t d : {2, 3, 5, 9}) {
    const auto h = testing::random_hermitian(d, rng);
    const auto e = hermitian_eigs(h);
    CMatrix back(d, d);
    for (std::size_t k = 0; k < d; ++k) {
      const auto v = e.vectors.column(k);
      back += CMatrix::outer(v, v) * cplx(e.values[k]);
    }
    EXPECT_LE(max_abs_diff(back, h), 1e-9);
    EXPECT_TRUE(std::is_sorted(e.values.rbegin(), e.values.rend()));
  }
}

TEST(HermitianEigs, SpectrumInvariantUnderConjugation) {
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const auto h = testing::random_hermitian(4, rng);
    const auto u = testing::random_unitary(4, rng);
    const auto a = hermitian_eigenvalues(h);
    const auto b = hermitian_eigenvalues(conjugate(u, h));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(a[k], b[k], 1e-9);
  }
}

TEST(HermitianEigs, RejectsNonHermitian) {
  CMatrix m{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_THROW(hermitian_eigs(m), DomainError);
}

TEST(HermitianEigs, BitIdenticalRepeats) {
  Rng rng(7);
  const auto h = testing::random_hermitian(6, rng);
  EXPECT_EQ(hermitian_eigs(h).values, hermitian_eigs(h).values);
}

TEST(Hermitize, SymmetrisesSmallDefects) {
  CMatrix m{{1.0, cplx(0.0, 1e-12)}, {0.0, 1.0}};
  const auto h = hermitize(m);
  EXPECT_EQ(h.hermiticity_defect(), 0.0);
}

TEST(GeneralEigs, SortedByMagnitude) {
  CMatrix m{{0.5, 0.0}, {0.0, -2.0}};
  const auto e = general_eigs(m);
  EXPECT_NEAR(std::abs(e.values[0] - cplx(-2.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(e.values[1] - cplx(0.5)), 0.0, 1e-14);
}

TEST(SingularValues, KnownMatrix) {
  const double m[6] = {3.0, 0.0, 0.0, 0.0, 4.0, 0.0};
  const auto s = singular_values(m, 2, 3);
  EXPECT_NEAR(s[0], 4.0, 1e-14);
  EXPECT_NEAR(s[1], 3.0, 1e-14);
}

TEST(Majorization, PureMajorizesEverything) {
  const double mixed[2] = {0.5, 0.5};
  const double pure[2] = {1.0, 0.0};
  EXPECT_TRUE(is_majorized_by(mixed, pure));
  EXPECT_FALSE(is_majorized_by(pure, mixed));
}

TEST(Majorization, Errors) {
  const double two[2] = {0.5, 0.5};
  const double three[3] = {0.2, 0.3, 0.5};
  const double bad[2] = {0.5, 0.6};
  EXPECT_THROW(is_majorized_by(two, three), DimensionError);
  EXPECT_THROW(is_majorized_by(bad, two), DomainError);
}

TEST(Unitary, RandomUnitariesPass) {
  Rng rng(8);
  EXPECT_TRUE(is_unitary(testing::random_unitary(5, rng)));
  EXPECT_FALSE(is_unitary(CMatrix::identity(2) * cplx(1.1)));
}

TEST(CMatrix, ShapeMismatchThrows) {
  EXPECT_THROW(CMatrix::identity(2) * CMatrix::identity(3), DimensionError);
  EXPECT_THROW(CMatrix::identity(2) + CMatrix::identity(3), DimensionError);
}

}  // namespace
}  // namespace qfb
