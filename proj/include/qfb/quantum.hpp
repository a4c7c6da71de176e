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

#ifndef QFB_QUANTUM_HPP_
#define QFB_QUANTUM_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qfb/linops.hpp"

namespace qfb {

/// Hermitian, unit-trace, positive semidefinite matrix. Instances are only
/// produced by validating factories, so holding one means the invariants hold:
/// Hermitian within 1e-10, trace 1 within 1e-10, smallest eigenvalue >= -1e-8.
class DensityMatrix {
 public:
  /// Validates and cleans up m: symmetrises, clips eigenvalues in [-1e-8, 0)
  /// to zero and renormalises. Throws DomainError when an invariant fails.
  static DensityMatrix from_matrix(const CMatrix& m);
  /// Same clean-up as from_matrix but rescales any positive trace to one.
  /// Used on unnormalised branch outputs.
  static DensityMatrix normalized(const CMatrix& m);

  static DensityMatrix maximally_mixed(std::size_t d);
  static DensityMatrix basis_state(std::size_t d, std::size_t k);
  static DensityMatrix pure(std::span<const cplx> psi);
  static DensityMatrix diagonal(std::span<const double> populations);

  std::size_t dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  cplx operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }

  /// Eigenvalues, descending.
  std::vector<double> spectrum() const;
  double purity() const;

 private:
  explicit DensityMatrix(CMatrix m) : matrix_(std::move(m)) {}
  CMatrix matrix_;
};

/// Completely positive trace-preserving map in Kraus form.
class KrausChannel {
 public:
  /// Throws DimensionError for non-square or mismatched operators and
  /// DomainError when sum K^dagger K deviates from I by more than 1e-10.
  explicit KrausChannel(std::vector<CMatrix> kraus);

  std::size_t dim() const { return dim_; }
  const std::vector<CMatrix>& kraus() const { return kraus_; }

  /// sum_k K X K^dagger on an arbitrary operator (the map is linear).
  CMatrix apply(const CMatrix& x) const;

 private:
  std::size_t dim_ = 0;
  std::vector<CMatrix> kraus_;
};

KrausChannel identity_channel(std::size_t d);
KrausChannel unitary_channel(const CMatrix& u);
/// lambda * rho + (1 - lambda) * I / d, written with the d^2 Weyl operators.
KrausChannel depolarizing_channel(std::size_t d, double lambda);
/// Qubit decay towards |0>: E0 = sqrt(gamma)|0><1|, E1 = sqrt(1-gamma)|1><1| + |0><0|.
KrausChannel amplitude_damping_channel(double gamma);
/// Kraus operators |target><j| for every j.
KrausChannel reset_channel(std::size_t d, std::size_t target);

/// Affine form of the depolarising channel.
DensityMatrix depolarize(const DensityMatrix& rho, double lambda);
DensityMatrix amplitude_damp(const DensityMatrix& rho, double gamma);
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel);

/// Unitary exchanging the two d-dimensional factors.
CMatrix swap_operator(std::size_t d);
/// sqrt(tau) I - i sqrt(1 - tau) S; tau is the transmissivity.
CMatrix partial_swap(std::size_t d, double tau);

CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
/// cos(chi) I + i sin(chi) sigma_y, the real rotation [[c, s], [-s, c]].
CMatrix rotation_y(double chi);
/// [[e^{i phi1} cos chi, e^{i phi2} sin chi], [-e^{-i phi2} sin chi, e^{-i phi1} cos chi]]
CMatrix su2(double chi, double phi1, double phi2);
/// Unitary V with V a = b for unit vectors a and b (phase-adjusted Householder).
CMatrix unitary_mapping(std::span<const cplx> from, std::span<const cplx> to);
/// Computational basis vector |k> in dimension d.
std::vector<cplx> basis_vector(std::size_t d, std::size_t k);

/// Controller reset state. The qubit family diag(eta0, 1 - eta0) and the
/// noisy (I/d) and clean (|0><0|) presets cover every case the protocols use;
/// an arbitrary state is also accepted.
class ControllerSpec {
 public:
  enum class Kind { Noisy, Clean, ThermalQubit, General };

  static ControllerSpec noisy(std::size_t d);
  static ControllerSpec clean(std::size_t d);
  static ControllerSpec thermal_qubit(double eta0);
  static ControllerSpec general(DensityMatrix eta);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return state_.dim(); }
  /// Only set for ThermalQubit.
  std::optional<double> eta0() const { return eta0_; }
  const DensityMatrix& state() const { return state_; }

 private:
  ControllerSpec(Kind kind, DensityMatrix state, std::optional<double> eta0)
      : kind_(kind), state_(std::move(state)), eta0_(eta0) {}
  Kind kind_;
  DensityMatrix state_;
  std::optional<double> eta0_;
};

}  // namespace qfb

#endif  // QFB_QUANTUM_HPP_
