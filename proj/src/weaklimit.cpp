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

#include "qfb/weaklimit.hpp"

#include <cmath>

namespace qfb {

namespace {
constexpr double kRankThreshold = 1e-9;
}

EffectiveHamiltonian effective_hamiltonian(const DensityMatrix& eta, const InLoopStage& stage) {
  if (eta.dim() != stage.dim()) throw DimensionError("controller and stage dimensions differ");
  CMatrix h = stage.apply_to_controller(eta.matrix()) + eta.matrix();
  return {eta.dim(), hermitize(h)};
}

double first_order_defect(const FeedbackProtocol& p, double dtheta) {
  if (!(dtheta >= 0.0)) throw DomainError("dtheta must be non-negative");
  const std::size_t d = p.dim();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const CMatrix e = CMatrix::unit(d, r, c);
      if (max_abs_diff(p.noise().apply(e), e) > 1e-12) {
        throw DomainError("weak-coupling expansion assumes a noiseless system");
      }
    }
  const double cth = std::cos(dtheta);
  const FeedbackProtocol weak = p.with_couplings(cth * cth, cth * cth);
  const CMatrix h = effective_hamiltonian(p.eta(), p.stage()).h;

  double worst = 0.0;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) {
      const CMatrix e = CMatrix::unit(d, r, c);
      CMatrix linear = e + commutator(h, e) * cplx{0.0, -dtheta};
      worst = std::max(worst, max_abs_diff(cycle_linear(e, weak), linear));
    }
  return worst;
}

std::vector<CMatrix> gell_mann_basis(std::size_t d) {
  if (d == 0) throw DimensionError("dimension must be positive");
  std::vector<CMatrix> basis{CMatrix::identity(d)};
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      CMatrix sym(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      CMatrix anti(d, d);
      anti(j, k) = cplx{0.0, -1.0};
      anti(k, j) = cplx{0.0, 1.0};
      basis.push_back(std::move(sym));
      basis.push_back(std::move(anti));
    }
  for (std::size_t l = 1; l < d; ++l) {
    const double ll = static_cast<double>(l);
    const double scale = std::sqrt(2.0 / (ll * (ll + 1.0)));
    CMatrix diag(d, d);
    for (std::size_t j = 0; j < l; ++j) diag(j, j) = scale;
    diag(l, l) = -ll * scale;
    basis.push_back(std::move(diag));
  }
  return basis;
}

std::vector<double> hermitian_coordinates(const CMatrix& h) {
  const CMatrix herm = hermitize(h);
  const auto basis = gell_mann_basis(h.rows());
  std::vector<double> out;
  out.reserve(basis.size());
  for (const auto& g : basis) {
    // Basis elements are orthogonal; tr(g g) is d for the identity and 2 otherwise.
    const double norm2 = (g * g).trace().real();
    out.push_back((g * herm).trace().real() / norm2);
  }
  return out;
}

namespace {

std::size_t span_rank(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * cols);
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  std::size_t rank = 0;
  for (double s : singular_values(flat, rows.size(), cols)) {
    if (s > kRankThreshold) ++rank;
  }
  return rank;
}

// Appends h to the spanning set if it is linearly independent of it.
bool try_extend(std::vector<CMatrix>& elems, std::vector<std::vector<double>>& coords,
                const CMatrix& h) {
  auto v = hermitian_coordinates(h);
  double n = 0.0;
  for (double x : v) n += x * x;
  n = std::sqrt(n);
  if (n < 1e-12) return false;
  for (auto& x : v) x /= n;
  coords.push_back(v);
  if (span_rank(coords) == coords.size()) {
    elems.push_back(h * (1.0 / n));
    return true;
  }
  coords.pop_back();
  return false;
}

}  // namespace

std::size_t lie_closure_dim(std::span<const CMatrix> generators) {
  if (generators.empty()) throw DomainError("lie_closure_dim needs at least one generator");
  const std::size_t d = generators.front().rows();
  for (const auto& g : generators) {
    if (g.rows() != d || g.cols() != d) throw DimensionError("generators differ in dimension");
    if (g.hermiticity_defect() > tol::kHermitian) throw DomainError("generator is not Hermitian");
  }
  std::vector<CMatrix> elems;
  std::vector<std::vector<double>> coords;
  try_extend(elems, coords, CMatrix::identity(d));
  for (const auto& g : generators) try_extend(elems, coords, g);

  const std::size_t full = d * d;
  bool grew = true;
  while (grew && elems.size() < full) {
    grew = false;
    const std::size_t n = elems.size();
    for (std::size_t i = 0; i < n && elems.size() < full; ++i)
      for (std::size_t j = i + 1; j < n && elems.size() < full; ++j) {
        const CMatrix c = commutator(elems[i], elems[j]) * cplx{0.0, -1.0};
        if (try_extend(elems, coords, c)) grew = true;
      }
  }
  return span_rank(coords);
}

}  // namespace qfb
