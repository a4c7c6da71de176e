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

#include "qfb/quantum.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qfb {

namespace {

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

// Symmetrise, clip small negative eigenvalues and rescale to unit trace.
CMatrix clean_state(const CMatrix& m, bool require_unit_trace) {
  if (!m.is_square() || m.rows() == 0) throw DimensionError("density matrix must be square");
  CMatrix h = hermitize(m);
  const double tr = h.trace().real();
  if (require_unit_trace && std::abs(tr - 1.0) > tol::kTrace) {
    throw DomainError("density matrix trace is " + std::to_string(tr));
  }
  if (!(tr > 0.0)) throw DomainError("density matrix has non-positive trace");
  h *= 1.0 / tr;

  if (h.rows() == 1) return h;
  auto eig = hermitian_eigs(h);
  const double min_eval = eig.values.back();
  if (min_eval < -tol::kNegativeEigen) {
    throw DomainError("density matrix has eigenvalue " + std::to_string(min_eval));
  }
  if (min_eval >= 0.0) return h;

  const std::size_t n = h.rows();
  double total = 0.0;
  for (auto& v : eig.values) {
    v = std::max(v, 0.0);
    total += v;
  }
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.values[k] == 0.0) continue;
    const double w = eig.values[k] / total;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        out(r, c) += w * eig.vectors(r, k) * std::conj(eig.vectors(c, k));
  }
  return hermitize(out);
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(const CMatrix& m) {
  return DensityMatrix(clean_state(m, /*require_unit_trace=*/true));
}

DensityMatrix DensityMatrix::normalized(const CMatrix& m) {
  return DensityMatrix(clean_state(m, /*require_unit_trace=*/false));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  if (d == 0) throw DimensionError("dimension must be positive");
  CMatrix m = CMatrix::identity(d);
  m *= 1.0 / static_cast<double>(d);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::basis_state(std::size_t d, std::size_t k) {
  if (k >= d) throw DimensionError("basis index out of range");
  return DensityMatrix(CMatrix::unit(d, k, k));
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> psi) {
  const double n = norm(psi);
  if (std::abs(n - 1.0) > 1e-10) throw DomainError("state vector is not normalised");
  return DensityMatrix(hermitize(CMatrix::outer(psi, psi)));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> populations) {
  for (double p : populations) {
    if (p < 0.0) throw DomainError("negative population");
  }
  return from_matrix(CMatrix::diagonal(populations));
}

std::vector<double> DensityMatrix::spectrum() const { return hermitian_eigenvalues(matrix_); }

double DensityMatrix::purity() const {
  double s = 0.0;
  for (const auto& z : matrix_.entries()) s += std::norm(z);
  return s;
}

KrausChannel::KrausChannel(std::vector<CMatrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("KrausChannel needs at least one operator");
  dim_ = kraus_.front().rows();
  CMatrix sum(dim_, dim_);
  for (const auto& k : kraus_) {
    if (k.rows() != dim_ || k.cols() != dim_) {
      throw DimensionError("Kraus operators must all be " + std::to_string(dim_) + "x" +
                           std::to_string(dim_));
    }
    sum += k.adjoint() * k;
  }
  const double defect = max_abs_diff(sum, CMatrix::identity(dim_));
  if (defect > tol::kCompleteness) {
    throw DomainError("Kraus completeness violated by " + std::to_string(defect));
  }
}

CMatrix KrausChannel::apply(const CMatrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw DimensionError("channel dimension mismatch");
  CMatrix out(dim_, dim_);
  for (const auto& k : kraus_) out += conjugate(k, x);
  return out;
}

KrausChannel identity_channel(std::size_t d) { return KrausChannel({CMatrix::identity(d)}); }

KrausChannel unitary_channel(const CMatrix& u) {
  if (!is_unitary(u)) throw DomainError("unitary_channel: operator is not unitary");
  return KrausChannel({u});
}

KrausChannel depolarizing_channel(std::size_t d, double lambda) {
  require_unit_interval(lambda, "lambda");
  // Weyl operators X^a Z^b form a unitary error basis; averaging over all of
  // them with equal weight is the completely depolarising map.
  const double d2 = static_cast<double>(d * d);
  std::vector<CMatrix> ops;
  ops.reserve(d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const double weight = (a == 0 && b == 0) ? lambda + (1.0 - lambda) / d2 : (1.0 - lambda) / d2;
      if (weight == 0.0) continue;
      CMatrix w(d, d);
      for (std::size_t k = 0; k < d; ++k) {
        // X^a Z^b |k> = omega^{b k} |k + a>
        const double angle = 2.0 * std::numbers::pi * static_cast<double>((b * k) % d) /
                             static_cast<double>(d);
        w((k + a) % d, k) = std::polar(std::sqrt(weight), angle);
      }
      ops.push_back(std::move(w));
    }
  }
  return KrausChannel(std::move(ops));
}

KrausChannel amplitude_damping_channel(double gamma) {
  require_unit_interval(gamma, "gamma");
  CMatrix e0{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
  CMatrix e1{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
  return KrausChannel({e0, e1});
}

KrausChannel reset_channel(std::size_t d, std::size_t target) {
  if (target >= d) throw DimensionError("reset target out of range");
  std::vector<CMatrix> ops;
  for (std::size_t j = 0; j < d; ++j) ops.push_back(CMatrix::unit(d, target, j));
  return KrausChannel(std::move(ops));
}

DensityMatrix depolarize(const DensityMatrix& rho, double lambda) {
  require_unit_interval(lambda, "lambda");
  const std::size_t d = rho.dim();
  CMatrix out = rho.matrix() * lambda;
  const double mix = (1.0 - lambda) / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) out(i, i) += mix;
  return DensityMatrix::from_matrix(out);
}

DensityMatrix amplitude_damp(const DensityMatrix& rho, double gamma) {
  if (rho.dim() != 2) throw DimensionError("amplitude damping acts on qubits");
  require_unit_interval(gamma, "gamma");
  const double keep = std::sqrt(1.0 - gamma);
  const CMatrix& m = rho.matrix();
  CMatrix out{{m(0, 0) + gamma * m(1, 1), keep * m(0, 1)},
              {keep * m(1, 0), (1.0 - gamma) * m(1, 1)}};
  return DensityMatrix::from_matrix(out);
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausChannel& channel) {
  if (rho.dim() != channel.dim()) throw DimensionError("apply_channel: dimension mismatch");
  return DensityMatrix::from_matrix(channel.apply(rho.matrix()));
}

CMatrix swap_operator(std::size_t d) {
  CMatrix s(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) s(i * d + j, j * d + i) = 1.0;
  return s;
}

CMatrix partial_swap(std::size_t d, double tau) {
  require_unit_interval(tau, "tau");
  CMatrix u = CMatrix::identity(d * d) * std::sqrt(tau);
  u += swap_operator(d) * cplx{0.0, -std::sqrt(1.0 - tau)};
  return u;
}

CMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
CMatrix pauli_y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }
CMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

CMatrix rotation_y(double chi) {
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  return {{c, s}, {-s, c}};
}

CMatrix su2(double chi, double phi1, double phi2) {
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  return {{std::polar(c, phi1), std::polar(s, phi2)},
          {-std::polar(s, -phi2), std::polar(c, -phi1)}};
}

CMatrix unitary_mapping(std::span<const cplx> from, std::span<const cplx> to) {
  if (from.size() != to.size()) throw DimensionError("unitary_mapping: length mismatch");
  if (std::abs(norm(from) - 1.0) > 1e-10 || std::abs(norm(to) - 1.0) > 1e-10) {
    throw DomainError("unitary_mapping: vectors must be normalised");
  }
  const std::size_t n = from.size();
  // Rotate the target's phase so <from|to'> is real and non-negative; then the
  // Householder reflection about from - to' maps from onto to'.
  const cplx overlap = inner(from, to);
  const cplx phase = std::abs(overlap) > 1e-15 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
  std::vector<cplx> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = from[i] - std::conj(phase) * to[i];
  const double wn = norm(w);
  CMatrix h = CMatrix::identity(n);
  if (wn > 1e-14) {
    h -= CMatrix::outer(w, w) * (2.0 / (wn * wn));
  }
  return h * phase;
}

std::vector<cplx> basis_vector(std::size_t d, std::size_t k) {
  if (k >= d) throw DimensionError("basis index out of range");
  std::vector<cplx> v(d);
  v[k] = 1.0;
  return v;
}

ControllerSpec ControllerSpec::noisy(std::size_t d) {
  return {Kind::Noisy, DensityMatrix::maximally_mixed(d), std::nullopt};
}

ControllerSpec ControllerSpec::clean(std::size_t d) {
  return {Kind::Clean, DensityMatrix::basis_state(d, 0), std::nullopt};
}

ControllerSpec ControllerSpec::thermal_qubit(double eta0) {
  require_unit_interval(eta0, "eta0");
  const double pops[2] = {eta0, 1.0 - eta0};
  return {Kind::ThermalQubit, DensityMatrix::diagonal(pops), eta0};
}

ControllerSpec ControllerSpec::general(DensityMatrix eta) {
  return {Kind::General, std::move(eta), std::nullopt};
}

}  // namespace qfb
