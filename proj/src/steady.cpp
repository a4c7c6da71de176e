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

#include <cmath>
#include <limits>
#include <string>

#include "qfb/loop.hpp"

namespace qfb {

namespace {
constexpr double kUnitCircleWindow = 1e-8;
}

CMatrix Superoperator::apply(const CMatrix& x) const {
  if (x.rows() != dim || x.cols() != dim) throw DimensionError("superoperator dimension mismatch");
  const auto v = stack_columns(x);
  return unstack_columns(qfb::apply(matrix, v), dim);
}

Superoperator kraus_superoperator(std::span<const CMatrix> kraus) {
  if (kraus.empty()) throw DimensionError("empty Kraus list");
  const std::size_t d = kraus.front().rows();
  CMatrix s(d * d, d * d);
  // vec(K X K^dagger) = (conj(K) (x) K) vec(X) for column stacking.
  for (const auto& k : kraus) s += kron(k.conj(), k);
  return {d, std::move(s)};
}

Superoperator build_superoperator(const FeedbackProtocol& p) {
  std::vector<CMatrix> all;
  for (std::size_t j = 0; j < p.outcomes(); ++j) {
    for (const auto& k : p.branch_kraus(j)) all.push_back(k);
  }
  const auto branches = kraus_superoperator(all);
  const auto noise = kraus_superoperator(p.noise().kraus());
  return {p.dim(), branches.matrix * noise.matrix};
}

SteadyState steady_state(const FeedbackProtocol& p) {
  const auto s = build_superoperator(p);
  auto eig = general_eigs(s.matrix);

  std::size_t near_unit = 0;
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (std::abs(std::abs(eig.values[k]) - 1.0) < kUnitCircleWindow) ++near_unit;
    const double dist = std::abs(eig.values[k] - 1.0);
    if (dist < best_dist) {
      best_dist = dist;
      best = k;
    }
  }
  if (near_unit > 1) {
    throw DegenerateSteadyState("cycle has " + std::to_string(near_unit) +
                                " eigenvalues on the unit circle; fixed point is not unique");
  }

  CMatrix rho = unstack_columns(eig.vectors.column(best), p.dim());
  const cplx tr = rho.trace();
  if (std::abs(tr) < 1e-12) throw DomainError("steady-state eigenvector is traceless");
  rho *= 1.0 / tr;

  double second = 0.0;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (k != best) second = std::max(second, std::abs(eig.values[k]));
  }
  return {DensityMatrix::normalized(rho), 1.0 - second, std::move(eig.values)};
}

FixedPointResult iterate_to_fixed_point(const FeedbackProtocol& p, const DensityMatrix& rho0,
                                        std::size_t max_iterations, double tolerance) {
  DensityMatrix rho = rho0;
  double residual = std::numeric_limits<double>::infinity();
  std::size_t it = 0;
  while (it < max_iterations) {
    DensityMatrix next = cycle_unconditional(rho, p);
    residual = max_abs_diff(next.matrix(), rho.matrix());
    rho = std::move(next);
    ++it;
    if (residual <= tolerance) break;
  }
  return {std::move(rho), it, residual};
}

}  // namespace qfb
