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

#ifndef QFB_APP_SCENARIOS_HPP_
#define QFB_APP_SCENARIOS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qfb/app/config.hpp"
#include "qfb/loop.hpp"

namespace qfb::app {

struct ScenarioInfo {
  std::string name;
  std::string description;
  bool measurement;   // has several outcomes, so trajectories are meaningful
  bool single;        // built from one protocol (comparisons use several)
  bool accepts_eta;   // controller may be set from the config
};

const std::vector<ScenarioInfo>& scenario_list();
/// ConfigError for unknown names.
const ScenarioInfo& find_scenario(const std::string& name);

/// The protocol of a single-protocol scenario; ConfigError otherwise.
FeedbackProtocol build_protocol(const RunConfig& cfg);

struct Metric {
  std::string name;
  double value;
};

struct Evaluation {
  std::vector<Metric> metrics;
  /// Largest |simulated - closed form| when a closed form covers the point.
  std::optional<double> oracle_deviation;
  /// Steady spectrum (descending) for steady-state scenarios.
  std::vector<double> spectrum;
};

/// Runs the scenario at one parameter point. May throw
/// DegenerateSteadyState.
Evaluation evaluate(const RunConfig& cfg);

}  // namespace qfb::app

#endif  // QFB_APP_SCENARIOS_HPP_
