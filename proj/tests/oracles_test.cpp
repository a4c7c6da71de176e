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

#include "qfb/loop.hpp"
#include "qfb/metrics.hpp"
#include "qfb/oracles.hpp"

namespace qfb {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(MfNoisySteady, Examples) {
  const auto full = oracle_mf_noisy_steady(3, 0.0, 0.4);
  EXPECT_NEAR(full[0], 1.0, 1e-15);
  EXPECT_NEAR(full[2], 0.0, 1e-15);
  for (double x : oracle_mf_noisy_steady(4, 1.0, 0.4)) EXPECT_NEAR(x, 0.25, 1e-15);
  const auto spot = oracle_mf_noisy_steady(2, 0.5, 0.5);
  EXPECT_NEAR(spot[0], 0.7857142857, 1e-10);
  EXPECT_NEAR(spot[1], 0.2142857143, 1e-10);
  EXPECT_THROW(oracle_mf_noisy_steady(2, 1.0, 1.0), DomainError);
  EXPECT_THROW(oracle_mf_noisy_steady(1, 0.5, 0.5), DimensionError);
}

TEST(CfCleanSteady, Examples) {
  for (std::size_t d : {2, 3, 5}) EXPECT_NEAR(oracle_cf_clean_steady(d, 0.5, 0.3)[0], 1.0, 1e-15);
  for (double tau : {0.0, 1.0}) {
    for (double x : oracle_cf_clean_steady(3, tau, 0.6)) EXPECT_NEAR(x, 1.0 / 3.0, 1e-15);
  }
  const FeedbackProtocol p(identity_channel(2), 0.3, 0.3, DensityMatrix::basis_state(2, 0),
                           InLoopStage::coherent(CMatrix::identity(2)));
  const auto sim = steady_state(p).state.spectrum();
  const auto o = oracle_cf_clean_steady(2, 0.3, 1.0);
  EXPECT_NEAR(sim[0], o[0], 1e-9);
}

TEST(CleanQubitEntropies, Examples) {
  for (double lambda : {0.0, 0.4, 0.9}) {
    const auto at_third = oracle_clean_qubit_entropies(1.0 / 3.0, lambda);
    EXPECT_NEAR(at_third.mf, at_third.cf, 1e-14);
    EXPECT_NEAR(oracle_clean_qubit_entropies(0.0, lambda).mf, 0.0, 1e-15);
    EXPECT_NEAR(oracle_clean_qubit_entropies(0.5, lambda).cf, 0.0, 1e-15);
    const auto below = oracle_clean_qubit_entropies(0.2, lambda);
    EXPECT_LT(below.mf, below.cf);
  }
}

TEST(EtaEntropies, Examples) {
  for (int i = 1; i <= 9; ++i) {
    const auto e = oracle_eta_entropies(0.25, 0.25, i / 10.0);
    EXPECT_LT(e.mf, e.cf) << "eta0 " << i / 10.0;
  }
  const auto mid = oracle_eta_entropies(0.81, 0.5, 0.5);
  EXPECT_LT(mid.mf, mid.cf);
  EXPECT_NEAR(mid.cf, 0.5, 1e-15);
  const auto cold = oracle_eta_entropies(0.81, 0.5, 0.2);
  EXPECT_LT(cold.cf, cold.mf);
  // The fixed-|0> variant wins only inside a window of controller temperatures.
  EXPECT_LT(oracle_mf_eta_entropy_fixed_target(0.81, 0.5, 0.5), oracle_eta_entropies(0.81, 0.5, 0.5).cf);
  EXPECT_GT(oracle_mf_eta_entropy_fixed_target(0.81, 0.5, 0.3), oracle_eta_entropies(0.81, 0.5, 0.3).cf);
  EXPECT_GT(oracle_mf_eta_entropy_fixed_target(0.81, 0.5, 0.8), oracle_eta_entropies(0.81, 0.5, 0.8).cf);
}

TEST(EtaEntropies, FixedTargetWindowEdges) {
  // Bisect S_MF(fixed |0>) - S_CF on either side of eta0 = 1/2.
  const auto diff = [](double eta0) {
    return oracle_mf_eta_entropy_fixed_target(0.81, 0.5, eta0) - oracle_eta_entropies(0.81, 0.5, eta0).cf;
  };
  const auto root = [&](double lo, double hi) {
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      ((diff(mid) > 0.0) == (diff(lo) > 0.0) ? lo : hi) = mid;
    }
    return lo;
  };
  const double lower = root(0.2, 0.5);
  const double upper = root(0.5, 0.9);
  EXPECT_NEAR(lower, 0.35735153, 1e-7);
  EXPECT_NEAR(upper, 0.76523509, 1e-7);
  // The quoted window (0.357, 0.764) sits inside the computed one.
  EXPECT_LE(lower, 0.358);
  EXPECT_GE(upper, 0.764);
}

TEST(CfGeneralQubit, Examples) {
  EXPECT_NEAR(oracle_cf_clean_general_qubit(0.5, 0.3, 0.0, 0.0), 1.0, 1e-14);
  for (double tau : {0.2, 0.7}) {
    for (double lambda : {0.1, 0.8}) {
      const FeedbackProtocol p(depolarizing_channel(2, lambda), tau, tau, DensityMatrix::basis_state(2, 0),
                               InLoopStage::coherent(su2(kPi / 2.0, 0.3, 1.1)));
      EXPECT_NEAR(steady_state(p).state(0, 0).real(), oracle_cf_clean_general_qubit(tau, lambda, kPi / 2.0, 0.3),
                  1e-9);
    }
  }
}

TEST(CfGeneralQubit, EntropyMinimisedAtMultiplesOfPi) {
  constexpr int kN = 12;
  double best = 2.0;
  int bi = -1;
  int bj = -1;
  for (int i = 0; i <= kN; ++i)
    for (int j = 0; j <= kN; ++j) {
      const FeedbackProtocol p(depolarizing_channel(2, 0.5), 0.3, 0.3, DensityMatrix::basis_state(2, 0),
                               InLoopStage::coherent(su2(kPi * i / kN, kPi * j / kN, 0.0)));
      const double s = linear_entropy(steady_state(p).state);
      if (s < best - 1e-12) {
        best = s;
        bi = i;
        bj = j;
      }
    }
  EXPECT_TRUE(bi == 0 || bi == kN) << bi;
  EXPECT_TRUE(bj == 0 || bj == kN) << bj;
}

TEST(AdOccupations, Examples) {
  EXPECT_NEAR(oracle_ad_occupations(0.0, 0.4).rho11_mf, 1.0, 1e-15);
  for (double gamma : {0.1, 0.5, 0.9}) {
    const auto o = oracle_ad_occupations(0.5, gamma);
    EXPECT_NEAR(o.rho11_chi0, 0.5, 1e-15);
    EXPECT_NEAR(o.rho11_chipi2, 0.5, 1e-15);
  }
  EXPECT_NEAR(oracle_ad_occupations(0.3, 1.0).cf_crossover_tau, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(oracle_ad_occupations(0.3, 1.0 - 1e-7).cf_crossover_tau, 2.0 / 3.0, 1e-6);
  EXPECT_THROW(oracle_ad_occupations(0.0, 0.0), DomainError);
}

TEST(AdOccupations, MeasurementWinsBelowHalfCoupling) {
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      const double tau = 0.5 * (i + 0.5) / 20.0;
      const double gamma = (j + 0.5) / 20.0;
      const auto o = oracle_ad_occupations(tau, gamma);
      EXPECT_GT(o.rho11_mf, o.rho11_chipi2);
    }
}

TEST(AdOccupations, Monotonicity) {
  for (int i = 1; i < 10; ++i) {
    const double lo = 0.5 + 0.05 * i;
    const double hi = 0.5 - 0.05 * i;
    for (int j = 1; j < 19; ++j) {
      const double g = j / 20.0;
      EXPECT_LT(oracle_ad_occupations(lo, g + 0.05).rho11_chi0, oracle_ad_occupations(lo, g).rho11_chi0);
      EXPECT_GT(oracle_ad_occupations(hi, g + 0.05).rho11_chipi2, oracle_ad_occupations(hi, g).rho11_chipi2);
    }
  }
}

TEST(AdOccupations, CrossoverSeparatesCoherentAndMeasured) {
  for (double gamma : {0.1, 0.4, 0.7}) {
    const double t = oracle_ad_occupations(0.5, gamma).cf_crossover_tau;
    const auto below = oracle_ad_occupations(t - 1e-4, gamma);
    const auto above = oracle_ad_occupations(t + 1e-4, gamma);
    EXPECT_LT(below.rho11_chi0, below.rho11_mf);
    EXPECT_GT(above.rho11_chi0, above.rho11_mf);
  }
}

TEST(BitflipFidelity, Examples) {
  EXPECT_NEAR(oracle_bitflip_fidelity(0.3, 0.5, 0.5), 0.8, 1e-15);
  EXPECT_NEAR(oracle_bitflip_fidelity(0.3, 1.0, 0.0), 0.5666666666666667, 1e-15);
  double best = -1.0;
  bool diagonal = false;
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double f = oracle_bitflip_fidelity(0.5, i / 20.0, j / 20.0);
      if (f > best + 1e-15) {
        best = f;
        diagonal = i == j;
      }
    }
  EXPECT_TRUE(diagonal);
}

TEST(ConditionalCooling, Limits) {
  const double lambda = 0.6;
  const double alpha_in = 0.7;
  const double alpha_l = lambda * alpha_in + (1.0 - lambda) / 2.0;
  const auto swap = oracle_conditional_cooling(2, 0.0, lambda, alpha_in);
  EXPECT_NEAR(swap.p0, alpha_l, 1e-15);
  EXPECT_NEAR(swap.alpha00, 1.0, 1e-15);
  EXPECT_NEAR(swap.alpha01, 1.0, 1e-15);
  // No interaction: the noisy controller is read out uniformly at random and
  // the system is left alone.
  for (std::size_t d : {2, 3}) {
    const auto idle = oracle_conditional_cooling(d, 1.0, lambda, alpha_in);
    const double a = lambda * alpha_in + (1.0 - lambda) / d;
    EXPECT_NEAR(idle.p0, 1.0 / d, 1e-15);
    EXPECT_NEAR(idle.alpha00, a, 1e-15);
    EXPECT_NEAR(idle.alpha01, a, 1e-15);
  }
  EXPECT_THROW(oracle_conditional_cooling(3, 0.5, 0.5, 0.2), DomainError);
}

TEST(ConditionalCooling, MatchesBranches) {
  const FeedbackProtocol p(depolarizing_channel(2, 0.5), 0.5, 0.5, DensityMatrix::maximally_mixed(2),
                           InLoopStage::reset_to(2, 0));
  const auto out = branch_outputs(DensityMatrix::maximally_mixed(2).matrix(), p);
  const auto o = oracle_conditional_cooling(2, 0.5, 0.5, 0.5);
  const double p0 = out[0].trace().real();
  EXPECT_NEAR(p0, o.p0, 1e-10);
  EXPECT_NEAR(out[0](0, 0).real() / p0, o.alpha00, 1e-10);
  EXPECT_NEAR(out[1](0, 0).real() / (1.0 - p0), o.alpha01, 1e-10);
}

}  // namespace
}  // namespace qfb
