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

#include "qfb/app/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qfb/app/commands.hpp"
#include "qfb/app/config.hpp"
#include "qfb/loop.hpp"
#include "qfb/metrics.hpp"
#include "qfb/oracles.hpp"
#include "qfb/weaklimit.hpp"

namespace qfb::app {

namespace {

constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  double gauss() { return normal_(gen_); }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

CMatrix random_unitary(std::size_t d, Rng& rng) {
  // Gram-Schmidt on Gaussian columns.
  std::vector<std::vector<cplx>> cols;
  while (cols.size() < d) {
    std::vector<cplx> v(d);
    for (auto& z : v) z = {rng.gauss(), rng.gauss()};
    for (const auto& c : cols) {
      const cplx ov = inner(c, v);
      for (std::size_t i = 0; i < d; ++i) v[i] -= ov * c[i];
    }
    const double n = norm(v);
    if (n < 1e-8) continue;
    for (auto& z : v) z /= n;
    cols.push_back(std::move(v));
  }
  CMatrix u(d, d);
  for (std::size_t c = 0; c < d; ++c)
    for (std::size_t r = 0; r < d; ++r) u(r, c) = cols[c][r];
  return u;
}

std::vector<cplx> random_unit_vector(std::size_t d, Rng& rng) {
  return random_unitary(d, rng).column(0);
}

DensityMatrix random_state(std::size_t d, Rng& rng) {
  CMatrix g(d, d);
  for (auto& z : g.entries()) z = {rng.gauss(), rng.gauss()};
  return DensityMatrix::normalized(g * g.adjoint());
}

InLoopStage random_povm(std::size_t d, Rng& rng) {
  std::vector<double> c(d), s(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double th = rng.uniform(0.0, kPi / 2.0);
    c[i] = std::cos(th);
    s[i] = std::sin(th);
  }
  return InLoopStage::povm({random_unitary(d, rng) * CMatrix::diagonal(std::span<const double>(c)),
                            random_unitary(d, rng) * CMatrix::diagonal(std::span<const double>(s))});
}

InLoopStage random_stage(std::size_t d, Rng& rng) {
  switch (rng.pick(3)) {
    case 0:
      return InLoopStage::coherent(random_unitary(d, rng));
    case 1: {
      std::vector<CMatrix> fb;
      for (std::size_t j = 0; j < d; ++j) fb.push_back(random_unitary(d, rng));
      return InLoopStage::projective(random_unitary(d, rng), std::move(fb));
    }
    default:
      return random_povm(d, rng);
  }
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(2);
  os << std::scientific << v;
  return os.str();
}

std::string fix(double v, int digits = 3) {
  std::ostringstream os;
  os.precision(digits);
  os << std::fixed << v;
  return os.str();
}

double spectrum_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double dev = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) dev = std::max(dev, std::abs(a[k] - b[k]));
  return dev;
}

FeedbackProtocol mf_noisy(std::size_t d, double tau, double lambda) {
  return FeedbackProtocol(depolarizing_channel(d, lambda), tau, tau, DensityMatrix::maximally_mixed(d),
                          InLoopStage::reset_to(d, 0));
}

FeedbackProtocol clean_qubit(double tau, double lambda, InLoopStage stage, double eta0 = 1.0) {
  return FeedbackProtocol(depolarizing_channel(2, lambda), tau, tau,
                          ControllerSpec::thermal_qubit(eta0).state(), std::move(stage));
}

InLoopStage rotate_outcome0_to_one() {
  return InLoopStage::povm({rotation_y(kPi / 2.0) * CMatrix::unit(2, 0, 0), CMatrix::unit(2, 1, 1)});
}

InLoopStage bitflip_povm(double a, double b) {
  const double k0[2] = {a, b};
  const double k1[2] = {std::sqrt(1.0 - a * a), std::sqrt(1.0 - b * b)};
  return InLoopStage::povm({pauli_x() * CMatrix::diagonal(std::span<const double>(k0)),
                            pauli_x() * CMatrix::diagonal(std::span<const double>(k1))});
}

FeedbackProtocol noiseless_qubit(double tau, double eta0, InLoopStage stage) {
  return FeedbackProtocol(identity_channel(2), tau, tau, ControllerSpec::thermal_qubit(eta0).state(),
                          std::move(stage));
}

struct Worst {
  std::string name;
  double value = 0.0;
  std::size_t points = 0;
  void add(double dev) {
    value = std::max(value, dev);
    ++points;
  }
};

}  // namespace

CheckResult timed(const std::string& name, const std::function<CheckResult()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = fn();
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

CheckResult check_oracle_grid() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr std::size_t kPoints = 120;
  Rng rng(20240611);
  std::vector<Worst> worst{{"mf_noisy_steady"},    {"cf_clean_steady"}, {"clean_qubit_entropies"},
                           {"eta_entropies"},      {"cf_general_qubit"}, {"ad_occupations"},
                           {"bitflip_fidelity"},   {"conditional_cooling"}};

  for (std::size_t i = 0; i < kPoints; ++i) {
    const std::size_t d = 2 + rng.pick(3);
    const double tau = rng.uniform(0.02, 0.98);
    const double lambda = rng.uniform(0.0, 0.98);
    const auto ss = steady_state(mf_noisy(d, tau, lambda));
    worst[0].add(spectrum_deviation(ss.state.spectrum(), oracle_mf_noisy_steady(d, tau, lambda)));
  }
  for (std::size_t i = 0; i < kPoints; ++i) {
    const std::size_t d = 2 + rng.pick(3);
    const double tau = rng.uniform(0.02, 0.98);
    const double lambda = rng.uniform(0.0, 0.98);
    const FeedbackProtocol p(depolarizing_channel(d, lambda), tau, tau, DensityMatrix::basis_state(d, 0),
                             InLoopStage::coherent(CMatrix::identity(d)));
    worst[1].add(spectrum_deviation(steady_state(p).state.spectrum(), oracle_cf_clean_steady(d, tau, lambda)));
  }
  for (std::size_t i = 0; i < kPoints; ++i) {
    const double tau = rng.uniform(0.02, 0.98);
    const double lambda = rng.uniform(0.0, 0.98);
    const auto o = oracle_clean_qubit_entropies(tau, lambda);
    const double s_mf = linear_entropy(steady_state(clean_qubit(tau, lambda, InLoopStage::reset_to(2, 0))).state);
    const double s_cf =
        linear_entropy(steady_state(clean_qubit(tau, lambda, InLoopStage::coherent(CMatrix::identity(2)))).state);
    worst[2].add(std::max(std::abs(s_mf - o.mf), std::abs(s_cf - o.cf)));
  }
  for (std::size_t i = 0; i < kPoints; ++i) {
    const double tau = rng.uniform(0.02, 0.98);
    const double lambda = rng.uniform(0.0, 0.98);
    const double eta0 = rng.uniform();
    const auto o = oracle_eta_entropies(tau, lambda, eta0);
    const std::size_t target = eta0 >= 0.5 ? 0 : 1;
    const double s_mf =
        linear_entropy(steady_state(clean_qubit(tau, lambda, InLoopStage::reset_to(2, target), eta0)).state);
    const double s_cf = linear_entropy(
        steady_state(clean_qubit(tau, lambda, InLoopStage::coherent(CMatrix::identity(2)), eta0)).state);
    worst[3].add(std::max(std::abs(s_mf - o.mf), std::abs(s_cf - o.cf)));
  }
  for (std::size_t i = 0; i < kPoints; ++i) {
    const double tau = rng.uniform(0.02, 0.98);
    const double lambda = rng.uniform(0.0, 0.98);
    const double chi = 0.5 * kPi * static_cast<double>(rng.pick(3));
    const double phi1 = rng.uniform(0.0, 2.0 * kPi);
    const double phi2 = rng.uniform(0.0, 2.0 * kPi);
    const auto ss = steady_state(clean_qubit(tau, lambda, InLoopStage::coherent(su2(chi, phi1, phi2))));
    worst[4].add(std::abs(ss.state(0, 0).real() - oracle_cf_clean_general_qubit(tau, lambda, chi, phi1)));
  }
  for (std::size_t i = 0; i < kPoints; ++i) {
    const double tau = rng.uniform(0.02, 0.98);
    const double gamma = rng.uniform(0.02, 0.98);
    const auto o = oracle_ad_occupations(tau, gamma);
    const auto run = [&](InLoopStage stage) {
      return steady_state(FeedbackProtocol(amplitude_damping_channel(gamma), tau, tau,
                                           DensityMatrix::maximally_mixed(2), std::move(stage)))
          .state(1, 1)
          .real();
    };
    const double dev = std::max({std::abs(run(InLoopStage::coherent(rotation_y(0.0))) - o.rho11_chi0),
                                 std::abs(run(InLoopStage::coherent(rotation_y(kPi / 2.0))) - o.rho11_chipi2),
                                 std::abs(run(rotate_outcome0_to_one()) - o.rho11_mf)});
    worst[5].add(dev);
  }
  for (std::size_t i = 0; i < kPoints; ++i) {
    const double tau = rng.uniform();
    const double a = rng.uniform();
    const double b = rng.uniform();
    const double eta0 = rng.uniform();
    const double f = haar_avg_bitflip_fidelity(noiseless_qubit(tau, eta0, bitflip_povm(a, b)));
    worst[6].add(std::abs(f - oracle_bitflip_fidelity(tau, a, b)));
  }
  for (std::size_t i = 0; i < kPoints; ++i) {
    const std::size_t d = 2 + rng.pick(2);
    const double tau = rng.uniform(0.02, 0.98);
    const double lambda = rng.uniform();
    const double dd = static_cast<double>(d);
    const double alpha = rng.uniform(1.0 / dd, 1.0);
    std::vector<double> pops(d, (1.0 - alpha) / (dd - 1.0));
    pops[0] = alpha;
    const auto out = branch_outputs(CMatrix::diagonal(std::span<const double>(pops)), mf_noisy(d, tau, lambda));
    const double p0 = out[0].trace().real();
    double rest00 = 0.0;
    for (std::size_t j = 1; j < d; ++j) rest00 += out[j](0, 0).real();
    const auto o = oracle_conditional_cooling(d, tau, lambda, alpha);
    worst[7].add(std::max({std::abs(p0 - o.p0), std::abs(out[0](0, 0).real() / p0 - o.alpha00),
                           std::abs(rest00 / (1.0 - p0) - o.alpha01)}));
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CheckResult r;
  r.passed = secs <= 60.0;
  std::string detail;
  for (const auto& w : worst) {
    r.passed = r.passed && w.value <= 1e-9 && w.points >= 100;
    detail += w.name + "=" + sci(w.value) + " ";
  }
  r.detail = "worst |sim - closed form| over " + std::to_string(kPoints) + " points each: " + detail +
             "(tol 1e-9; " + fix(secs, 1) + " s of 60 s)";
  return r;
}

CheckResult check_cooling_spot_value() {
  const auto p = mf_noisy(2, 0.5, 0.5);
  const std::vector<double> expected{11.0 / 14.0, 3.0 / 14.0};
  const double dev_eig = spectrum_deviation(steady_state(p).state.spectrum(), expected);
  const auto fp = iterate_to_fixed_point(p, DensityMatrix::maximally_mixed(2), 1000);
  const double dev_fp = spectrum_deviation(fp.state.spectrum(), expected);
  const double dev_oracle = spectrum_deviation(oracle_mf_noisy_steady(2, 0.5, 0.5), expected);
  CheckResult r;
  r.passed = dev_eig <= 1e-9 && dev_fp <= 1e-9 && dev_oracle <= 1e-12;
  r.detail = "eigensolve dev " + sci(dev_eig) + ", 1000-step iteration dev " + sci(dev_fp) +
             ", closed form dev " + sci(dev_oracle);
  return r;
}

CheckResult check_cf_no_cooling() {
  Rng rng(77);
  double worst_drop = 0.0;
  double worst_state = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = 2 + rng.pick(2);
    const FeedbackProtocol p(depolarizing_channel(d, rng.uniform(0.0, 0.99)), rng.uniform(), rng.uniform(),
                             DensityMatrix::maximally_mixed(d), InLoopStage::coherent(random_unitary(d, rng)));
    auto rho = random_state(d, rng);
    double s = von_neumann_entropy(rho);
    for (int step = 0; step < 20; ++step) {
      rho = cycle_unconditional(rho, p);
      const double next = von_neumann_entropy(rho);
      worst_drop = std::max(worst_drop, s - next);
      s = next;
    }
    CMatrix mixed = CMatrix::identity(d) * (1.0 / static_cast<double>(d));
    worst_state = std::max(worst_state, max_abs_diff(steady_state(p).state.matrix(), mixed));
  }
  CheckResult r;
  r.passed = worst_drop <= 1e-10 && worst_state <= 1e-8;
  r.detail = "500 protocols x 20 cycles: largest entropy drop " + sci(worst_drop) +
             " (tol 1e-10), steady-state distance to I/d " + sci(worst_state) + " (tol 1e-8)";
  return r;
}

CheckResult check_clean_crossover() {
  CheckResult r;
  r.passed = true;
  for (double lambda : {0.1, 0.5, 0.9}) {
    const auto diff = [lambda](double tau) {
      const double s_mf = linear_entropy(steady_state(clean_qubit(tau, lambda, InLoopStage::reset_to(2, 0))).state);
      const double s_cf =
          linear_entropy(steady_state(clean_qubit(tau, lambda, InLoopStage::coherent(CMatrix::identity(2)))).state);
      return s_mf - s_cf;
    };
    double lo = 0.2;
    double hi = 0.45;
    const bool bracket = diff(lo) < 0.0 && diff(hi) > 0.0;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (diff(mid) < 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    const double err = std::abs(root - 1.0 / 3.0);
    r.passed = r.passed && bracket && err < 1e-9;
    r.detail += "lambda=" + fix(lambda, 1) + ": tau*=" + fix(root, 12) + " (|tau*-1/3|=" + sci(err) + ") ";
  }
  return r;
}

CheckResult check_purity_dichotomy() {
  double min_cf = 1.0;
  double max_mf = 0.0;
  for (double lambda : {0.05, 0.5, 0.95}) {
    min_cf = std::min(min_cf,
                      steady_state(clean_qubit(0.5, lambda, InLoopStage::coherent(CMatrix::identity(2))))
                          .state.purity());
    for (int i = 0; i < 30; ++i)
      for (int j = 0; j < 30; ++j) {
        const double th0 = kPi * i / 30.0;
        const double th1 = kPi * j / 30.0;
        const auto stage = InLoopStage::projective({rotation_y(th0), rotation_y(th1)});
        max_mf = std::max(max_mf, steady_state(clean_qubit(0.5, lambda, stage)).state.purity());
      }
  }
  CheckResult r;
  r.passed = min_cf >= 1.0 - 1e-9 && max_mf < 1.0 - 1e-4;
  r.detail = "CF min purity 1-" + sci(1.0 - min_cf) + "; projective MF max purity " + fix(max_mf, 6) +
             " over 30x30 feedback grid, lambda in {0.05, 0.5, 0.95}";
  return r;
}

CheckResult check_amplitude_damping() {
  constexpr int kN = 20;
  std::vector<double> grid(kN);
  for (int i = 0; i < kN; ++i) grid[i] = (i + 0.5) / kN;
  double worst = 0.0;
  int boundary_ok = 0;
  int flag_mismatch = 0;
  for (double gamma : grid) {
    const auto occupancy = [gamma](double tau, InLoopStage stage) {
      return steady_state(FeedbackProtocol(amplitude_damping_channel(gamma), tau, tau,
                                           DensityMatrix::maximally_mixed(2), std::move(stage)))
          .state(1, 1)
          .real();
    };
    std::vector<double> gap(kN);
    double threshold = 0.0;
    for (int i = 0; i < kN; ++i) {
      const double tau = grid[i];
      const auto o = oracle_ad_occupations(tau, gamma);
      threshold = o.cf_crossover_tau;
      const double c0 = occupancy(tau, InLoopStage::coherent(rotation_y(0.0)));
      const double c1 = occupancy(tau, InLoopStage::coherent(rotation_y(kPi / 2.0)));
      const double mf = occupancy(tau, rotate_outcome0_to_one());
      worst = std::max({worst, std::abs(c0 - o.rho11_chi0), std::abs(c1 - o.rho11_chipi2),
                        std::abs(mf - o.rho11_mf)});
      gap[i] = c0 - mf;
      const double margin = std::max(c0, c1) - mf;
      if (std::abs(margin) > 1e-9 && (margin > 0.0) != o.cf_beats_mf) ++flag_mismatch;
    }
    // Cells where the simulated CF-minus-MF occupation changes sign.
    std::vector<int> flips;
    for (int i = 0; i + 1 < kN; ++i) {
      if ((gap[i] > 0.0) != (gap[i + 1] > 0.0)) flips.push_back(i);
    }
    bool ok;
    if (threshold <= grid.front() || threshold >= grid.back()) {
      ok = flips.empty() && (threshold >= grid.back() ? gap.back() <= 0.0 : gap.front() > 0.0);
    } else {
      ok = flips.size() == 1 && grid[flips[0]] <= threshold && threshold <= grid[flips[0] + 1] &&
           gap.back() > 0.0;
    }
    if (ok) ++boundary_ok;
  }
  CheckResult r;
  r.passed = worst <= 1e-9 && boundary_ok == kN && flag_mismatch == 0;
  r.detail = "20x20 grid: worst occupation dev " + sci(worst) + "; crossover inside the simulated sign-change cell for " +
             std::to_string(boundary_ok) + "/20 gamma rows; CF-beats-MF flag mismatches " +
             std::to_string(flag_mismatch);
  return r;
}

CheckResult check_bitflip() {
  Rng rng(4242);
  double worst_cf = 0.0;
  double worst_mf = 0.0;
  double worst_povm = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double tau = i / 10.0;
    const double eta0 = rng.uniform();
    worst_cf = std::max(worst_cf, std::abs(haar_avg_bitflip_fidelity(noiseless_qubit(
                                               tau, eta0, InLoopStage::coherent(pauli_x()))) -
                                           (1.0 - 2.0 * tau / 3.0)));
    worst_mf = std::max(worst_mf, std::abs(haar_avg_bitflip_fidelity(noiseless_qubit(
                                               tau, eta0, InLoopStage::projective({pauli_x(), pauli_x()}))) -
                                           (2.0 / 3.0 - tau / 3.0)));
  }
  for (int i = 0; i < 40; ++i) {
    const double tau = rng.uniform();
    const double a = rng.uniform();
    const double b = rng.uniform();
    const double f = haar_avg_bitflip_fidelity(noiseless_qubit(tau, rng.uniform(), bitflip_povm(a, b)));
    worst_povm = std::max(worst_povm, std::abs(f - oracle_bitflip_fidelity(tau, a, b)));
  }
  constexpr int kGrid = 21;
  double best = -1.0;
  int best_i = 0;
  int best_j = 0;
  double best_off = -1.0;
  double best_diag = -1.0;
  for (int i = 0; i < kGrid; ++i)
    for (int j = 0; j < kGrid; ++j) {
      const double a = i / double(kGrid - 1);
      const double b = j / double(kGrid - 1);
      const double f = haar_avg_bitflip_fidelity(noiseless_qubit(0.5, 1.0, bitflip_povm(a, b)));
      if (f > best) {
        best = f;
        best_i = i;
        best_j = j;
      }
      (i == j ? best_diag : best_off) = std::max(i == j ? best_diag : best_off, f);
    }
  CheckResult r;
  r.passed = worst_cf <= 1e-9 && worst_mf <= 1e-9 && worst_povm <= 1e-9 && best_i == best_j &&
             best_diag > best_off;
  r.detail = "CF dev " + sci(worst_cf) + ", projective MF dev " + sci(worst_mf) + ", POVM dev " +
             sci(worst_povm) + "; argmax (a,b)=(" + fix(best_i / 20.0, 2) + "," + fix(best_j / 20.0, 2) +
             "), diagonal max - off-diagonal max " + sci(best_diag - best_off);
  return r;
}

CheckResult check_conditional_statistics(int threads) {
  constexpr std::size_t kTraj = 10000;
  CheckResult r;
  r.passed = true;
  std::ostringstream detail;

  // One conditional step from diagonal inputs.
  struct Case {
    std::size_t d;
    double alpha;
  };
  for (const Case c : {Case{2, 0.5}, Case{2, 0.8}, Case{3, 0.6}}) {
    const double tau = 0.5;
    const double lambda = 0.5;
    const auto p = mf_noisy(c.d, tau, lambda);
    std::vector<double> pops(c.d, (1.0 - c.alpha) / static_cast<double>(c.d - 1));
    pops[0] = c.alpha;
    const auto rho0 = DensityMatrix::diagonal(pops);
    const auto samples = run_ensemble(rho0, p, {kTraj, 1, 99 + c.d, threads});
    const auto o = oracle_conditional_cooling(c.d, tau, lambda, c.alpha);
    std::size_t zeros = 0;
    double dev00 = 0.0;
    double dev01 = 0.0;
    for (const auto& s : samples) {
      const double top = s.final_state(0, 0).real();
      if (s.steps[0].outcome == 0) {
        ++zeros;
        dev00 = std::max(dev00, std::abs(top - o.alpha00));
      } else {
        dev01 = std::max(dev01, std::abs(top - o.alpha01));
      }
    }
    const double freq = static_cast<double>(zeros) / kTraj;
    const double sigma = std::sqrt(o.p0 * (1.0 - o.p0) / kTraj);
    const bool ok = std::abs(freq - o.p0) <= 3.0 * sigma && dev00 <= 1e-10 && dev01 <= 1e-10;
    r.passed = r.passed && ok;
    detail << "d=" << c.d << " a_in=" << c.alpha << ": p0 " << fix(freq, 4) << " vs " << fix(o.p0, 4)
           << " (" << fix(std::abs(freq - o.p0) / sigma, 2) << " sigma), a00/a01 dev " << sci(std::max(dev00, dev01))
           << "; ";
  }

  // Ensemble-mean end state against the unconditional steady state.
  {
    const auto p = mf_noisy(2, 0.5, 0.5);
    const auto samples = run_ensemble(DensityMatrix::maximally_mixed(2), p, {kTraj, 200, 2024, threads});
    const auto ss = steady_state(p).state;
    double worst_z = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (int part = 0; part < 2; ++part) {
          double sum = 0.0;
          double sq = 0.0;
          for (const auto& s : samples) {
            const double x = part == 0 ? s.final_state(i, j).real() : s.final_state(i, j).imag();
            sum += x;
            sq += x * x;
          }
          const double mean = sum / kTraj;
          const double var = std::max(0.0, sq / kTraj - mean * mean);
          const double se = std::sqrt(var / (kTraj - 1.0));
          const double target = part == 0 ? ss(i, j).real() : ss(i, j).imag();
          const double diff = std::abs(mean - target);
          // Entries that are zero on every trajectory only carry round-off.
          if (se > 1e-12) {
            worst_z = std::max(worst_z, diff / se);
            ok = ok && diff <= 3.0 * se;
          } else {
            ok = ok && diff <= 1e-12;
          }
        }
    r.passed = r.passed && ok;
    detail << "mean end state within " << fix(worst_z, 2) << " sigma of steady state; ";
  }

  // Majorisation of every sampled output by tau*spec(mid) + (1-tau)*pure.
  {
    std::size_t checked = 0;
    std::size_t violations = 0;
    for (std::size_t d : {2, 3}) {
      const double tau = 0.5;
      const auto p = mf_noisy(d, tau, 0.5);
      for (std::uint64_t t = 0; t < 200; ++t) {
        DensityMatrix prev = DensityMatrix::maximally_mixed(d);
        const auto recs = sample_trajectory(prev, p, 50, trajectory_seed(555, t));
        for (const auto& rec : recs) {
          for (const auto& b : branch_details(prev, p)) {
            if (b.outcome != rec.outcome) continue;
            auto bound = b.system_mid.spectrum();
            for (auto& x : bound) x *= tau;
            bound[0] += 1.0 - tau;
            ++checked;
            if (!is_majorized_by(rec.state.spectrum(), bound, 1e-10)) ++violations;
          }
          prev = rec.state;
        }
      }
    }
    r.passed = r.passed && violations == 0;
    detail << "majorisation violations " << violations << "/" << checked;
  }
  r.detail = detail.str();
  return r;
}

CheckResult check_weak_limit() {
  Rng rng(909);
  CheckResult r;
  r.passed = true;
  std::ostringstream detail;

  std::vector<std::pair<std::string, FeedbackProtocol>> cases;
  const std::vector<cplx> plus{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  cases.emplace_back("MF reset to |+>", FeedbackProtocol(identity_channel(2), 1.0, 1.0, DensityMatrix::basis_state(2, 0),
                                                         InLoopStage::reset_to(CMatrix::identity(2), plus)));
  cases.emplace_back("CF sigma_x", FeedbackProtocol(identity_channel(2), 1.0, 1.0, DensityMatrix::basis_state(2, 0),
                                                    InLoopStage::coherent(pauli_x())));
  cases.emplace_back("CF mixed controller",
                     FeedbackProtocol(identity_channel(2), 1.0, 1.0, DensityMatrix::maximally_mixed(2),
                                      InLoopStage::coherent(random_unitary(2, rng))));
  const auto v3 = random_unit_vector(3, rng);
  cases.emplace_back("qutrit MF", FeedbackProtocol(identity_channel(3), 1.0, 1.0, DensityMatrix::basis_state(3, 0),
                                                   InLoopStage::reset_to(CMatrix::identity(3), v3)));
  for (const auto& [name, p] : cases) {
    const double d1 = first_order_defect(p, 1e-2);
    const double d2 = first_order_defect(p, 5e-3);
    const double d3 = first_order_defect(p, 2.5e-3);
    const double r1 = d1 / d2;
    const double r2 = d2 / d3;
    const bool ok = std::abs(r1 - 4.0) <= 0.4 && std::abs(r2 - 4.0) <= 0.4;
    r.passed = r.passed && ok;
    detail << name << " ratios " << fix(r1) << "," << fix(r2) << "; ";
  }

  for (std::size_t d : {2, 3}) {
    std::vector<CMatrix> cf;
    for (int k = 0; k < 3; ++k) {
      cf.push_back(effective_hamiltonian(DensityMatrix::maximally_mixed(d),
                                         InLoopStage::coherent(random_unitary(d, rng)))
                       .h);
    }
    const std::size_t cf_dim = lie_closure_dim(cf);
    std::vector<CMatrix> mf;
    for (int k = 0; k < 2; ++k) {
      mf.push_back(effective_hamiltonian(DensityMatrix::basis_state(d, 0),
                                         InLoopStage::reset_to(CMatrix::identity(d), random_unit_vector(d, rng)))
                       .h);
    }
    const std::size_t mf_dim = lie_closure_dim(mf);
    r.passed = r.passed && cf_dim == 1 && mf_dim == d * d;
    detail << "d=" << d << " closure CF " << cf_dim << ", MF " << mf_dim << "; ";
  }
  r.detail = detail.str();
  return r;
}

CheckResult check_cooling_rate() {
  const std::vector<double> taus{0.5, 0.75, 0.9};
  std::vector<double> xs, ys;
  std::ostringstream detail;
  for (double tau : taus) {
    const auto p = mf_noisy(2, tau, 1.0);
    const double target = von_neumann_entropy(steady_state(p).state, true);
    auto rho = DensityMatrix::maximally_mixed(2);
    std::size_t n = 0;
    while (std::abs(von_neumann_entropy(rho, true) - target) >= 0.01 && n < 100000) {
      rho = cycle_unconditional(rho, p);
      ++n;
    }
    xs.push_back(std::log(1.0 / (1.0 - tau)));
    ys.push_back(std::log(static_cast<double>(n)));
    detail << "tau=" << tau << ": " << n << " cycles; ";
  }
  const double mx = (xs[0] + xs[1] + xs[2]) / 3.0;
  const double my = (ys[0] + ys[1] + ys[2]) / 3.0;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  CheckResult r;
  r.passed = std::abs(slope - 1.0) <= 0.3;
  detail << "fitted exponent " << fix(slope) << " (lambda = 1)";
  r.detail = detail.str();
  return r;
}

CheckResult check_determinism(int threads) {
  RunConfig cfg;
  cfg.scenario = "mf-noisy-cooling";
  cfg.d = 3;
  cfg.tau = 0.6;
  cfg.lambda = 0.7;
  cfg.ntraj = 150;
  cfg.steps = 40;
  cfg.seed = 31337;
  cfg.threads = 1;
  const std::string a = trajectories_csv(cfg);
  const std::string b = trajectories_csv(cfg);
  cfg.threads = std::max(threads, 3);
  const std::string c = trajectories_csv(cfg);

  const auto p = mf_noisy(2, 0.5, 0.5);
  const auto rho0 = DensityMatrix::maximally_mixed(2);
  const auto s1 = ensemble_statistics(rho0, p, {300, 30, 5, 1});
  const auto s3 = ensemble_statistics(rho0, p, {300, 30, 5, 3});
  const auto ser = ensemble_statistics_serial(rho0, p, {300, 30, 5, 1});
  double dev_serial = 0.0;
  for (std::size_t k = 0; k < 30; ++k) {
    dev_serial = std::max(dev_serial, std::abs(s1.mean_entropy[k] - ser.mean_entropy[k]));
  }
  const bool same_threads = s1.mean_entropy == s3.mean_entropy && s1.mean_rho11 == s3.mean_rho11 &&
                            s1.outcome_counts == s3.outcome_counts;
  CheckResult r;
  r.passed = a == b && a == c && same_threads && dev_serial <= 1e-12;
  r.detail = std::string("repeat run ") + (a == b ? "identical" : "DIFFERS") + ", 1 vs " +
             std::to_string(std::max(threads, 3)) + " threads " + (a == c ? "identical" : "DIFFERS") +
             ", block reduction thread-invariant " + (same_threads ? "yes" : "NO") + ", serial reference dev " +
             sci(dev_serial);
  return r;
}

CheckResult check_cycle_consistency() {
  Rng rng(1234);
  double joint = 0.0;
  double super = 0.0;
  double trace = 0.0;
  double weak = 0.0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 2 + rng.pick(2);
    const FeedbackProtocol p(depolarizing_channel(d, rng.uniform()), rng.uniform(), rng.uniform(),
                             random_state(d, rng), random_stage(d, rng));
    const auto rho = random_state(d, rng).matrix();
    const auto fast = branch_outputs(rho, p);
    const auto slow = branch_outputs_joint(rho, p);
    for (std::size_t j = 0; j < fast.size(); ++j) joint = std::max(joint, max_abs_diff(fast[j], slow[j]));
    const auto s = build_superoperator(p);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const CMatrix e = CMatrix::unit(d, a, b);
        super = std::max(super, max_abs_diff(s.apply(e), cycle_linear(e, p)));
      }
    // Left fixed vector: vec(I)^dagger S = vec(I)^dagger.
    const auto id = stack_columns(CMatrix::identity(d));
    for (std::size_t c = 0; c < d * d; ++c) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < d * d; ++k) acc += std::conj(id[k]) * s.matrix(k, c);
      trace = std::max(trace, std::abs(acc - id[c]));
    }
    // Coherent feedback equals an uninformative two-outcome measurement.
    const CMatrix v = random_unitary(d, rng);
    const double t1 = rng.uniform();
    const double t2 = rng.uniform();
    const auto eta = random_state(d, rng);
    const FeedbackProtocol cf(depolarizing_channel(d, 0.8), t1, t2, eta, InLoopStage::coherent(v));
    const CMatrix half = v * (1.0 / std::sqrt(2.0));
    const FeedbackProtocol mf(depolarizing_channel(d, 0.8), t1, t2, eta, InLoopStage::povm({half, half}));
    weak = std::max(weak, max_abs_diff(cycle_linear(rho, cf), cycle_linear(rho, mf)));
  }
  CheckResult r;
  r.passed = joint <= 1e-12 && super <= 1e-10 && trace <= 1e-10 && weak <= 1e-12;
  r.detail = "compressed vs joint " + sci(joint) + ", superoperator vs cycle " + sci(super) +
             ", trace row " + sci(trace) + ", CF vs uninformative POVM " + sci(weak);
  return r;
}

std::vector<CheckResult> run_validation(int threads) {
  std::vector<CheckResult> out;
  out.push_back(timed("oracle grid", check_oracle_grid));
  out.push_back(timed("cooling spot value", check_cooling_spot_value));
  out.push_back(timed("CF no-cooling", check_cf_no_cooling));
  out.push_back(timed("clean-controller crossover", check_clean_crossover));
  out.push_back(timed("purity dichotomy", check_purity_dichotomy));
  out.push_back(timed("amplitude damping", check_amplitude_damping));
  out.push_back(timed("bit-flip fidelities", check_bitflip));
  out.push_back(timed("conditional statistics", [threads] { return check_conditional_statistics(threads); }));
  out.push_back(timed("weak-coupling limit", check_weak_limit));
  out.push_back(timed("cooling rate", check_cooling_rate));
  out.push_back(timed("determinism", [threads] { return check_determinism(threads); }));
  out.push_back(timed("cycle consistency", check_cycle_consistency));
  return out;
}

}  // namespace qfb::app
