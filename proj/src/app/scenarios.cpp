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

#include "qfb/app/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfb/metrics.hpp"
#include "qfb/oracles.hpp"

namespace qfb::app {

namespace {

constexpr double kPi = std::numbers::pi;

const std::vector<ScenarioInfo> kScenarios = {
    {"mf-noisy-cooling", "measurement feedback, maximally mixed controller, reset to |0>", true, true, false},
    {"mf-clean-cooling", "measurement feedback, controller |0>, reset to |0>", true, true, false},
    {"cf-clean", "coherent feedback, controller |0>, in-loop su2(chi, phi1, phi2) for qubits", false, true, false},
    {"cf-noisy", "coherent feedback, maximally mixed controller", false, true, false},
    {"mf-eta", "qubit measurement feedback, controller diag(eta0, 1-eta0), reset to its dominant eigenvector", true, true, true},
    {"cf-eta", "qubit coherent feedback, controller diag(eta0, 1-eta0), identity in-loop", false, true, true},
    {"ad-cf", "amplitude damping gamma, coherent in-loop rotation_y(chi), controller I/2", false, true, false},
    {"ad-mf", "amplitude damping gamma, measurement resetting the controller to |1>", true, true, false},
    {"bitflip-cf", "noiseless bit flip, coherent sigma_x in-loop", false, true, true},
    {"bitflip-mf", "noiseless bit flip, projective measurement with sigma_x feedback", true, true, true},
    {"bitflip-povm", "noiseless bit flip, two-outcome measurement of strengths (a, b)", true, true, true},
    {"cooling-clean-compare", "qubit steady linear entropies of MF and CF with controller |0>", false, false, false},
    {"cooling-eta-compare", "qubit steady linear entropies of MF and CF with controller diag(eta0, 1-eta0)", false, false, true},
    {"ad-compare", "excited-state occupations of both CF rotations and MF under amplitude damping", false, false, false},
};

DensityMatrix controller(const RunConfig& cfg, const DensityMatrix& fallback) {
  switch (cfg.eta.kind) {
    case EtaSetting::Kind::Default:
      return fallback;
    case EtaSetting::Kind::Noisy:
      return DensityMatrix::maximally_mixed(cfg.d);
    case EtaSetting::Kind::Clean:
      return DensityMatrix::basis_state(cfg.d, 0);
    case EtaSetting::Kind::Eta0:
      break;
  }
  if (cfg.d != 2) throw ConfigError("eta0 controllers are qubits; use d = 2");
  return ControllerSpec::thermal_qubit(cfg.eta.eta0).state();
}

double eta0_of(const RunConfig& cfg) {
  switch (cfg.eta.kind) {
    case EtaSetting::Kind::Noisy:
      return 0.5;
    case EtaSetting::Kind::Clean:
      return 1.0;
    default:
      return cfg.eta.eta0;
  }
}

void require_qubit(const RunConfig& cfg) {
  if (cfg.d != 2) throw ConfigError("scenario '" + cfg.scenario + "' is defined for d = 2");
}

CMatrix cyclic_shift(std::size_t d) {
  CMatrix x(d, d);
  for (std::size_t k = 0; k < d; ++k) x((k + 1) % d, k) = 1.0;
  return x;
}

InLoopStage reset_to_one_via_rotation() {
  // Outcome 0 is rotated onto |1> (up to sign); outcome 1 is left alone.
  const CMatrix r = rotation_y(kPi / 2.0);
  return InLoopStage::povm({r * CMatrix::unit(2, 0, 0), CMatrix::unit(2, 1, 1)});
}

InLoopStage bitflip_povm(double a, double b) {
  const CMatrix x = pauli_x();
  const double k0[2] = {a, b};
  const double k1[2] = {std::sqrt(1.0 - a * a), std::sqrt(1.0 - b * b)};
  return InLoopStage::povm({x * CMatrix::diagonal(std::span<const double>(k0)),
                            x * CMatrix::diagonal(std::span<const double>(k1))});
}

bool near(double x, double target) { return std::abs(x - target) < 1e-12; }

// chi on the set where the coherent clean-controller steady state is diagonal.
bool diagonal_manifold(double chi) { return std::abs(std::sin(2.0 * chi)) < 1e-12; }

FeedbackProtocol make(const RunConfig& cfg, KrausChannel noise, DensityMatrix eta, InLoopStage stage) {
  return FeedbackProtocol(std::move(noise), cfg.coupling1(), cfg.coupling2(), std::move(eta),
                          std::move(stage));
}

Evaluation steady_metrics(const FeedbackProtocol& p) {
  const auto ss = steady_state(p);
  Evaluation ev;
  ev.spectrum = ss.state.spectrum();
  for (std::size_t k = 0; k < ev.spectrum.size(); ++k) {
    ev.metrics.push_back({"eigenvalue_" + std::to_string(k), ev.spectrum[k]});
  }
  ev.metrics.push_back({"entropy", von_neumann_entropy(ss.state)});
  ev.metrics.push_back({"entropy_normalised", von_neumann_entropy(ss.state, true)});
  ev.metrics.push_back({"linear_entropy", linear_entropy(ss.state)});
  ev.metrics.push_back({"purity", ss.state.purity()});
  ev.metrics.push_back({"rho00", ss.state(0, 0).real()});
  ev.metrics.push_back({"rho11", ss.state(1, 1).real()});
  ev.metrics.push_back({"gap", ss.gap});
  return ev;
}

double metric(const Evaluation& ev, const std::string& name) {
  for (const auto& m : ev.metrics) {
    if (m.name == name) return m.value;
  }
  throw std::logic_error("missing metric " + name);
}

void add_oracle(Evaluation& ev, const std::string& name, double simulated, double closed_form) {
  ev.metrics.push_back({"oracle_" + name, closed_form});
  const double dev = std::abs(simulated - closed_form);
  ev.oracle_deviation = std::max(ev.oracle_deviation.value_or(0.0), dev);
}

void add_oracle_spectrum(Evaluation& ev, const std::vector<double>& closed_form) {
  double dev = 0.0;
  for (std::size_t k = 0; k < closed_form.size(); ++k) {
    ev.metrics.push_back({"oracle_eigenvalue_" + std::to_string(k), closed_form[k]});
    dev = std::max(dev, std::abs(ev.spectrum[k] - closed_form[k]));
  }
  ev.oracle_deviation = std::max(ev.oracle_deviation.value_or(0.0), dev);
}

void add_deviation_metric(Evaluation& ev) {
  if (ev.oracle_deviation) ev.metrics.push_back({"oracle_max_deviation", *ev.oracle_deviation});
}

Evaluation fidelity_metrics(const FeedbackProtocol& p, std::optional<double> closed_form) {
  Evaluation ev;
  const double f = haar_avg_bitflip_fidelity(p);
  ev.metrics.push_back({"haar_fidelity", f});
  if (closed_form) add_oracle(ev, "haar_fidelity", f, *closed_form);
  return ev;
}

// Qubit linear entropies of the MF (reset to the controller's dominant
// eigenvector) and CF (identity) steady states for a given controller.
std::pair<double, double> simulated_entropies(const RunConfig& cfg, const DensityMatrix& eta,
                                              std::size_t mf_target) {
  const auto mf = make(cfg, depolarizing_channel(2, cfg.lambda), eta, InLoopStage::reset_to(2, mf_target));
  const auto cf = make(cfg, depolarizing_channel(2, cfg.lambda), eta,
                       InLoopStage::coherent(CMatrix::identity(2)));
  return {linear_entropy(steady_state(mf).state), linear_entropy(steady_state(cf).state)};
}

bool equal_couplings(const RunConfig& cfg) { return cfg.coupling1() == cfg.coupling2(); }

}  // namespace

const std::vector<ScenarioInfo>& scenario_list() { return kScenarios; }

const ScenarioInfo& find_scenario(const std::string& name) {
  for (const auto& s : kScenarios) {
    if (s.name == name) return s;
  }
  std::string known;
  for (const auto& s : kScenarios) known += (known.empty() ? "" : ", ") + s.name;
  throw ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
}

FeedbackProtocol build_protocol(const RunConfig& cfg) {
  const auto& info = find_scenario(cfg.scenario);
  if (!info.single) throw ConfigError("scenario '" + cfg.scenario + "' compares several protocols");
  if (!info.accepts_eta && cfg.eta.kind != EtaSetting::Kind::Default) {
    throw ConfigError("scenario '" + cfg.scenario + "' fixes its controller state");
  }
  const std::size_t d = cfg.d;
  const auto& n = cfg.scenario;
  if (n == "mf-noisy-cooling") {
    return make(cfg, depolarizing_channel(d, cfg.lambda), DensityMatrix::maximally_mixed(d),
                InLoopStage::reset_to(d, 0));
  }
  if (n == "mf-clean-cooling") {
    return make(cfg, depolarizing_channel(d, cfg.lambda), DensityMatrix::basis_state(d, 0),
                InLoopStage::reset_to(d, 0));
  }
  if (n == "cf-clean" || n == "cf-noisy") {
    const CMatrix v = d == 2 ? su2(cfg.chi, cfg.phi1, cfg.phi2)
                             : (n == "cf-noisy" ? cyclic_shift(d) : CMatrix::identity(d));
    const auto eta = n == "cf-clean" ? DensityMatrix::basis_state(d, 0) : DensityMatrix::maximally_mixed(d);
    return make(cfg, depolarizing_channel(d, cfg.lambda), eta, InLoopStage::coherent(v));
  }
  if (n == "mf-eta" || n == "cf-eta") {
    require_qubit(cfg);
    const auto eta = controller(cfg, DensityMatrix::basis_state(2, 0));
    if (n == "cf-eta") {
      return make(cfg, depolarizing_channel(2, cfg.lambda), eta,
                  InLoopStage::coherent(CMatrix::identity(2)));
    }
    const std::size_t target = eta0_of(cfg) >= 0.5 ? 0 : 1;
    return make(cfg, depolarizing_channel(2, cfg.lambda), eta, InLoopStage::reset_to(2, target));
  }
  if (n == "ad-cf") {
    require_qubit(cfg);
    return make(cfg, amplitude_damping_channel(cfg.gamma), DensityMatrix::maximally_mixed(2),
                InLoopStage::coherent(rotation_y(cfg.chi)));
  }
  if (n == "ad-mf") {
    require_qubit(cfg);
    return make(cfg, amplitude_damping_channel(cfg.gamma), DensityMatrix::maximally_mixed(2),
                reset_to_one_via_rotation());
  }
  require_qubit(cfg);
  const auto eta = controller(cfg, DensityMatrix::basis_state(2, 0));
  if (n == "bitflip-cf") return make(cfg, identity_channel(2), eta, InLoopStage::coherent(pauli_x()));
  if (n == "bitflip-mf") {
    return make(cfg, identity_channel(2), eta, InLoopStage::projective({pauli_x(), pauli_x()}));
  }
  return make(cfg, identity_channel(2), eta, bitflip_povm(cfg.a, cfg.b));
}

Evaluation evaluate(const RunConfig& cfg) {
  const auto& info = find_scenario(cfg.scenario);
  const auto& n = cfg.scenario;
  const std::size_t d = cfg.d;
  const double tau = cfg.coupling1();
  const bool same = equal_couplings(cfg);

  if (info.single) {
    const auto p = build_protocol(cfg);
    if (n.rfind("bitflip-", 0) == 0) {
      std::optional<double> closed;
      if (same) {
        if (n == "bitflip-cf") closed = 1.0 - 2.0 * tau / 3.0;
        if (n == "bitflip-mf") closed = 2.0 / 3.0 - tau / 3.0;
        if (n == "bitflip-povm") closed = oracle_bitflip_fidelity(tau, cfg.a, cfg.b);
      }
      auto ev = fidelity_metrics(p, closed);
      add_deviation_metric(ev);
      return ev;
    }

    auto ev = steady_metrics(p);
    if (n == "mf-noisy-cooling" && same) {
      add_oracle_spectrum(ev, oracle_mf_noisy_steady(d, tau, cfg.lambda));
    } else if (n == "mf-clean-cooling" && same && d == 2) {
      add_oracle(ev, "linear_entropy", metric(ev, "linear_entropy"),
                 oracle_clean_qubit_entropies(tau, cfg.lambda).mf);
    } else if (n == "cf-clean" && same) {
      if (d == 2 && diagonal_manifold(cfg.chi)) {
        add_oracle(ev, "rho00", metric(ev, "rho00"),
                   oracle_cf_clean_general_qubit(tau, cfg.lambda, cfg.chi, cfg.phi1));
      } else if (d > 2) {
        add_oracle_spectrum(ev, oracle_cf_clean_steady(d, tau, cfg.lambda));
      }
    } else if (n == "cf-noisy") {
      add_oracle_spectrum(ev, std::vector<double>(d, 1.0 / static_cast<double>(d)));
    } else if (n == "mf-eta" && same) {
      add_oracle(ev, "linear_entropy", metric(ev, "linear_entropy"),
                 oracle_eta_entropies(tau, cfg.lambda, eta0_of(cfg)).mf);
    } else if (n == "cf-eta" && same) {
      add_oracle(ev, "linear_entropy", metric(ev, "linear_entropy"),
                 oracle_eta_entropies(tau, cfg.lambda, eta0_of(cfg)).cf);
    } else if (n == "ad-cf" && same) {
      const auto o = oracle_ad_occupations(tau, cfg.gamma);
      if (near(cfg.chi, 0.0)) add_oracle(ev, "rho11", metric(ev, "rho11"), o.rho11_chi0);
      if (near(cfg.chi, kPi / 2.0)) add_oracle(ev, "rho11", metric(ev, "rho11"), o.rho11_chipi2);
    } else if (n == "ad-mf" && same) {
      add_oracle(ev, "rho11", metric(ev, "rho11"), oracle_ad_occupations(tau, cfg.gamma).rho11_mf);
    }
    add_deviation_metric(ev);
    return ev;
  }

  require_qubit(cfg);
  if (!same) throw ConfigError("comparison scenarios use one coupling for both interactions");
  Evaluation ev;
  if (n == "cooling-clean-compare" || n == "cooling-eta-compare") {
    const double eta0 = n == "cooling-clean-compare" ? 1.0 : eta0_of(cfg);
    const auto eta = ControllerSpec::thermal_qubit(eta0).state();
    const auto [s_mf, s_cf] = simulated_entropies(cfg, eta, eta0 >= 0.5 ? 0 : 1);
    ev.metrics.push_back({"s_mf", s_mf});
    ev.metrics.push_back({"s_cf", s_cf});
    ev.metrics.push_back({"s_mf_minus_s_cf", s_mf - s_cf});
    const auto o = oracle_eta_entropies(tau, cfg.lambda, eta0);
    add_oracle(ev, "s_mf", s_mf, o.mf);
    add_oracle(ev, "s_cf", s_cf, o.cf);
    if (n == "cooling-eta-compare") {
      ev.metrics.push_back({"oracle_s_mf_fixed_target",
                            oracle_mf_eta_entropy_fixed_target(tau, cfg.lambda, eta0)});
    }
  } else {
    const auto eta = DensityMatrix::maximally_mixed(2);
    const auto noise = amplitude_damping_channel(cfg.gamma);
    const auto rho11 = [](const FeedbackProtocol& p) { return steady_state(p).state(1, 1).real(); };
    const double chi0 = rho11(make(cfg, noise, eta, InLoopStage::coherent(rotation_y(0.0))));
    const double chipi2 = rho11(make(cfg, noise, eta, InLoopStage::coherent(rotation_y(kPi / 2.0))));
    const double mf = rho11(make(cfg, noise, eta, reset_to_one_via_rotation()));
    ev.metrics.push_back({"rho11_chi0", chi0});
    ev.metrics.push_back({"rho11_chipi2", chipi2});
    ev.metrics.push_back({"rho11_mf", mf});
    ev.metrics.push_back({"cf_beats_mf", std::max(chi0, chipi2) > mf ? 1.0 : 0.0});
    const auto o = oracle_ad_occupations(tau, cfg.gamma);
    add_oracle(ev, "rho11_chi0", chi0, o.rho11_chi0);
    add_oracle(ev, "rho11_chipi2", chipi2, o.rho11_chipi2);
    add_oracle(ev, "rho11_mf", mf, o.rho11_mf);
    ev.metrics.push_back({"oracle_cf_crossover_tau", o.cf_crossover_tau});
    ev.metrics.push_back({"oracle_cf_beats_mf", o.cf_beats_mf ? 1.0 : 0.0});
  }
  add_deviation_metric(ev);
  return ev;
}

}  // namespace qfb::app
