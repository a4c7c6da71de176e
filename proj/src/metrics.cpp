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

#include "qfb/metrics.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace qfb {

double shannon_entropy(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities) {
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho, bool normalised) {
  if (rho.dim() == 1) return 0.0;
  const auto spec = rho.spectrum();
  const double s = shannon_entropy(spec);
  return normalised ? s / std::log(static_cast<double>(rho.dim())) : s;
}

double linear_entropy(const DensityMatrix& rho) { return 1.0 - rho.purity(); }

double fidelity_to_pure(const DensityMatrix& rho, std::span<const cplx> psi) {
  if (psi.size() != rho.dim()) throw DimensionError("fidelity: dimension mismatch");
  if (std::abs(norm(psi) - 1.0) > 1e-10) throw DomainError("fidelity: state is not normalised");
  return inner(psi, apply(rho.matrix(), psi)).real();
}

double excited_population(const DensityMatrix& rho) {
  if (rho.dim() < 2) throw DimensionError("excited population needs d >= 2");
  return rho(1, 1).real();
}

QuadratureRule gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("quadrature needs at least one node");
  QuadratureRule rule{std::vector<double>(n), std::vector<double>(n)};
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like start, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = nn * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

void check_bitflip_protocol(const FeedbackProtocol& p, std::size_t nodes) {
  if (nodes < 4) throw DomainError("Haar quadrature needs at least 4 nodes per axis");
  if (p.dim() != 2) throw DimensionError("bit-flip average is defined for qubits");
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      const CMatrix e = CMatrix::unit(2, r, c);
      if (max_abs_diff(p.noise().apply(e), e) > 1e-12) {
        throw DomainError("bit-flip average assumes a noiseless system");
      }
    }
}

// <sigma_x psi| cycle(|psi><psi|) |sigma_x psi> for psi on the Bloch sphere.
double flip_fidelity(const Superoperator& s, double u, double phi) {
  const double a = std::sqrt(std::max(0.0, 0.5 * (1.0 + u)));
  const double b = std::sqrt(std::max(0.0, 0.5 * (1.0 - u)));
  const std::vector<cplx> psi{a, std::polar(b, phi)};
  const CMatrix out = s.apply(CMatrix::outer(psi, psi));
  const std::vector<cplx> flipped{psi[1], psi[0]};
  return inner(flipped, apply(out, flipped)).real();
}

double ring_sum(const Superoperator& s, double u, std::size_t nodes) {
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(nodes);
  double acc = 0.0;
  for (std::size_t k = 0; k < nodes; ++k) acc += flip_fidelity(s, u, dphi * static_cast<double>(k));
  return acc * dphi;
}

}  // namespace

double haar_avg_bitflip_fidelity(const FeedbackProtocol& p, std::size_t nodes) {
  check_bitflip_protocol(p, nodes);
  const auto s = build_superoperator(p);
  const auto rule = gauss_legendre(nodes);
  std::vector<double> rings(nodes);
  const long n = static_cast<long>(nodes);
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) rings[i] = ring_sum(s, rule.nodes[i], nodes);
  // Fixed-order combination keeps the result independent of the thread count.
  double total = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) total += rule.weights[i] * rings[i];
  return total / (4.0 * std::numbers::pi);
}

double haar_avg_bitflip_fidelity_serial(const FeedbackProtocol& p, std::size_t nodes) {
  check_bitflip_protocol(p, nodes);
  const auto s = build_superoperator(p);
  const auto rule = gauss_legendre(nodes);
  double total = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) total += rule.weights[i] * ring_sum(s, rule.nodes[i], nodes);
  return total / (4.0 * std::numbers::pi);
}

MonteCarloEstimate haar_avg_bitflip_fidelity_mc(const FeedbackProtocol& p, std::size_t samples,
                                                std::uint64_t seed) {
  check_bitflip_protocol(p, 4);
  if (samples < 2) throw DomainError("Monte-Carlo average needs at least two samples");
  const auto s = build_superoperator(p);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> gauss;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<cplx> psi{{gauss(gen), gauss(gen)}, {gauss(gen), gauss(gen)}};
    const double nrm = norm(psi);
    for (auto& z : psi) z /= nrm;
    const CMatrix out = s.apply(CMatrix::outer(psi, psi));
    const std::vector<cplx> flipped{psi[1], psi[0]};
    const double f = inner(flipped, apply(out, flipped)).real();
    sum += f;
    sum_sq += f * f;
  }
  const double n = static_cast<double>(samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq / n - mean * mean) * n / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

}  // namespace qfb
