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

#ifndef QFB_APP_CONFIG_HPP_
#define QFB_APP_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace qfb::app {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One swept parameter: n evenly spaced values from lo to hi inclusive.
struct AxisSpec {
  std::string name;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2;

  double value(std::size_t i) const;
};

/// Parses "name:lo:hi:n".
AxisSpec parse_axis(const std::string& text);

struct EtaSetting {
  enum class Kind { Default, Noisy, Clean, Eta0 };
  Kind kind = Kind::Default;
  double eta0 = 1.0;
};

struct RunConfig {
  std::string scenario = "mf-noisy-cooling";
  std::size_t d = 2;
  double tau = 0.5;
  std::optional<double> tau1;
  std::optional<double> tau2;
  double lambda = 0.5;
  double gamma = 0.5;
  EtaSetting eta;
  // In-loop stage parameters; each scenario reads the ones it needs.
  double chi = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double a = 1.0;
  double b = 0.0;
  std::uint64_t seed = 1;
  std::size_t steps = 50;
  std::size_t ntraj = 100;
  int threads = 0;
  std::string out;
  std::vector<AxisSpec> axes;

  double coupling1() const { return tau1.value_or(tau); }
  double coupling2() const { return tau2.value_or(tau); }
};

/// Command-line values; set fields win over the config file.
struct Overrides {
  std::optional<std::string> scenario;
  std::optional<double> tau, tau1, tau2, lambda, gamma, eta0;
  std::optional<std::size_t> d, steps, ntraj;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> out;
  std::vector<std::string> axes;
};

/// Reads a JSON document from disk; ConfigError on I/O or syntax problems.
nlohmann::json load_config_file(const std::string& path);

/// Defaults, then the JSON document, then the overrides. Unknown keys and
/// out-of-range values raise ConfigError.
RunConfig resolve_config(const nlohmann::json& doc, const Overrides& flags);

/// Full resolved configuration, enough to reproduce a run.
nlohmann::json to_json(const RunConfig& cfg);

/// Sets a sweepable parameter by name.
void set_parameter(RunConfig& cfg, const std::string& name, double value);
bool is_sweepable(const std::string& name);

/// Range checks shared by every entry point.
void check_config(const RunConfig& cfg);

}  // namespace qfb::app

#endif  // QFB_APP_CONFIG_HPP_
