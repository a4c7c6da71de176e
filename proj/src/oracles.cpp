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

#include "qfb/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "qfb/linops.hpp"

namespace qfb {

namespace {

void in_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

void valid_dim(std::size_t d) {
  if (d < 2) throw DimensionError("dimension must be at least 2");
}

std::vector<double> descending(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

std::vector<double> oracle_mf_noisy_steady(std::size_t d, double tau, double lambda) {
  valid_dim(d);
  in_unit(tau, "tau");
  in_unit(lambda, "lambda");
  const double dd = static_cast<double>(d);
  const double den = dd * (1.0 - lambda * tau * tau);
  if (den == 0.0) throw DomainError("tau = lambda = 1 has no unique steady state");
  std::vector<double> out(d, (tau - lambda * tau * tau) / den);
  out[0] = (dd * (1.0 - tau) + tau - lambda * tau * tau) / den;
  return descending(std::move(out));
}

std::vector<double> oracle_cf_clean_steady(std::size_t d, double tau, double lambda) {
  valid_dim(d);
  in_unit(tau, "tau");
  in_unit(lambda, "lambda");
  const double dd = static_cast<double>(d);
  const double k = (1.0 - 2.0 * tau) * (1.0 - 2.0 * tau);
  const double den = dd * (k * lambda - 1.0);
  if (den == 0.0) throw DomainError("no unique steady state at these parameters");
  std::vector<double> out(d, k * (lambda - 1.0) / den);
  out[0] = (4.0 * (tau - 1.0) * tau * (dd + lambda - 1.0) + lambda - 1.0) / den;
  return descending(std::move(out));
}

namespace {

double mf_linear_entropy(double tau, double lambda, double target_weight) {
  const double num = (tau - 1.0) * (tau * (2.0 * target_weight - 1.0) + 1.0);
  const double den = tau * tau * lambda - 1.0;
  if (den == 0.0) throw DomainError("tau = lambda = 1 has no unique steady state");
  return 0.5 - num * num / (2.0 * den * den);
}

double cf_linear_entropy(double tau, double lambda, double eta0) {
  const double k = (1.0 - 2.0 * tau) * (1.0 - 2.0 * tau);
  const double den = k * lambda - 1.0;
  if (den == 0.0) throw DomainError("no unique steady state at these parameters");
  const double bias = (1.0 - 2.0 * eta0) * (1.0 - 2.0 * eta0);
  return 0.5 - 8.0 * tau * tau * (tau - 1.0) * (tau - 1.0) * bias / (den * den);
}

}  // namespace

EntropyPair oracle_clean_qubit_entropies(double tau, double lambda) {
  in_unit(tau, "tau");
  in_unit(lambda, "lambda");
  return {mf_linear_entropy(tau, lambda, 1.0), cf_linear_entropy(tau, lambda, 1.0)};
}

EntropyPair oracle_eta_entropies(double tau, double lambda, double eta0) {
  in_unit(tau, "tau");
  in_unit(lambda, "lambda");
  in_unit(eta0, "eta0");
  return {mf_linear_entropy(tau, lambda, std::max(eta0, 1.0 - eta0)),
          cf_linear_entropy(tau, lambda, eta0)};
}

double oracle_mf_eta_entropy_fixed_target(double tau, double lambda, double eta0) {
  in_unit(tau, "tau");
  in_unit(lambda, "lambda");
  in_unit(eta0, "eta0");
  return mf_linear_entropy(tau, lambda, eta0);
}

double oracle_cf_clean_general_qubit(double tau, double lambda, double chi, double phi1) {
  in_unit(tau, "tau");
  in_unit(lambda, "lambda");
  const double p = std::cos(chi);
  const double q = std::cos(2.0 * phi1);
  const double c2 = tau;
  const double c4 = tau * tau;
  const double p2 = p * p;
  const double num = -2.0 * c4 * (lambda + 1.0) * p2 * (q + 1.0) +
                     2.0 * c2 * (p2 * (lambda * (q + 2.0) + q + 1.0) - lambda) + lambda -
                     2.0 * lambda * p2 + 1.0;
  const double den =
      lambda * (4.0 * c2 * (p2 * ((c2 - 1.0) * q + c2 - 2.0) + 1.0) + 4.0 * p2 - 2.0) - 2.0;
  if (den == 0.0) throw DomainError("no unique steady state at these parameters");
  // The expression as usually printed carries the opposite overall sign.
  return -num / den;
}

DampingOccupations oracle_ad_occupations(double tau, double gamma) {
  in_unit(tau, "tau");
  in_unit(gamma, "gamma");
  DampingOccupations r{};
  const double den2 = 4.0 * (tau - 1.0) * (gamma - 1.0) * tau + gamma;
  if (den2 == 0.0) throw DomainError("tau = gamma = 0 has no unique steady state");
  r.rho11_chi0 = 2.0 * tau * (1.0 - tau) / den2;
  r.rho11_chipi2 = (1.0 - tau) / (2.0 * (gamma - 1.0) * tau - gamma + 2.0);
  r.rho11_mf = (2.0 - tau * tau - tau) / (2.0 * (gamma - 1.0) * tau * tau + 2.0);
  if (gamma < 1.0) {
    const double x =
        (-7.0 * gamma + std::sqrt(gamma * (17.0 * gamma - 24.0) + 16.0) + 4.0) / (2.0 - 2.0 * gamma);
    r.cf_crossover_tau = x / 4.0;
  } else {
    r.cf_crossover_tau = 2.0 / 3.0;  // limit gamma -> 1
  }
  r.cf_beats_mf = std::max(r.rho11_chi0, r.rho11_chipi2) > r.rho11_mf;
  return r;
}

double oracle_bitflip_fidelity(double tau, double a, double b) {
  in_unit(tau, "tau");
  in_unit(a, "a");
  in_unit(b, "b");
  return (std::sqrt(1.0 - a * a) * std::sqrt(1.0 - b * b) * (1.0 - tau) + a * b * (1.0 - tau) +
          2.0 - tau) /
         3.0;
}

ConditionalCooling oracle_conditional_cooling(std::size_t d, double tau, double lambda,
                                              double alpha_in) {
  valid_dim(d);
  in_unit(tau, "tau");
  in_unit(lambda, "lambda");
  const double dd = static_cast<double>(d);
  if (!(alpha_in >= 1.0 / dd - 1e-15 && alpha_in <= 1.0)) {
    throw DomainError("alpha_in must lie in [1/d, 1]");
  }
  const double s2 = 1.0 - tau;
  const double a = lambda * alpha_in + (1.0 - lambda) / dd;
  ConditionalCooling r{};
  r.p0 = tau / dd + s2 * a;
  r.alpha00 = tau * a / (r.p0 * dd) + s2;
  const double rest = 1.0 - r.p0;
  // rest = 0 only for tau = 0 with a pure input; the other branches never occur.
  r.alpha01 = rest > 0.0 ? tau / (rest * dd) * (tau * dd * a - a + s2) + s2 : 1.0;
  return r;
}

}  // namespace qfb
