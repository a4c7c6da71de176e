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

#include <iostream>

#include "CLI11.hpp"
#include "qfb/app/commands.hpp"
#include "qfb/app/config.hpp"
#include "qfb/app/scenarios.hpp"
#include "qfb/linops.hpp"
#include "qfb/loop.hpp"

namespace {

using namespace qfb::app;

struct Flags {
  std::string config;
  Overrides over;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file");
  cmd->add_option("--scenario", f.over.scenario, "named preset (see `qfeedback scenarios`)");
  cmd->add_option("--tau", f.over.tau, "coupling for both partial swaps");
  cmd->add_option("--tau1", f.over.tau1, "coupling of the first partial swap");
  cmd->add_option("--tau2", f.over.tau2, "coupling of the second partial swap");
  cmd->add_option("--lambda", f.over.lambda, "depolarising strength (1 = noiseless)");
  cmd->add_option("--gamma", f.over.gamma, "amplitude-damping strength");
  cmd->add_option("--eta0", f.over.eta0, "ground population of a qubit controller");
  cmd->add_option("--d", f.over.d, "system dimension");
  cmd->add_option("--seed", f.over.seed, "RNG seed");
  cmd->add_option("--steps", f.over.steps, "cycles per trajectory");
  cmd->add_option("--ntraj", f.over.ntraj, "number of trajectories");
  cmd->add_option("--out", f.over.out, "CSV output path; also writes PATH.meta.json");
  cmd->add_option("--threads", f.over.threads, "worker threads (0 = all)");
}

RunConfig resolve(const Flags& f) {
  const nlohmann::json doc = f.config.empty() ? nlohmann::json::object() : load_config_file(f.config);
  return resolve_config(doc, f.over);
}

int list_scenarios() {
  for (const auto& s : scenario_list()) {
    std::cout << std::left;
    std::cout.width(24);
    std::cout << s.name << s.description << "\n";
  }
  return exit_code::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-based vs coherent feedback in a collision model"};
  app.set_version_flag("--version", std::string(tool_version()));
  app.require_subcommand(1);

  Flags f;
  auto* steady = app.add_subcommand("steady", "steady state, metrics and closed-form deviation");
  auto* traj = app.add_subcommand("trajectories", "seeded conditional trajectory ensemble");
  auto* sweep = app.add_subcommand("sweep", "steady-state metrics over a 1-D or 2-D grid");
  auto* validate = app.add_subcommand("validate", "simulator vs closed forms and property checks");
  app.add_subcommand("scenarios", "list scenario presets");
  for (auto* c : {steady, traj, sweep, validate}) add_common(c, f);
  sweep->add_option("--axis", f.over.axes, "name:lo:hi:n (repeat for a second axis)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_code::kOk : exit_code::kConfigError;
  }

  try {
    const auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    if (name == "scenarios") return list_scenarios();
    const RunConfig cfg = resolve(f);
    if (name == "steady") return cmd_steady(cfg, std::cout);
    if (name == "trajectories") return cmd_trajectories(cfg, std::cout, std::cerr);
    if (name == "sweep") return cmd_sweep(cfg, std::cout, std::cerr);
    return cmd_validate(cfg, std::cout);
  } catch (const qfb::DegenerateSteadyState& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kDegenerate;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::kConfigError;
  } catch (const qfb::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::kConfigError;
  } catch (const qfb::DimensionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return exit_code::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::kConfigError;
  }
}
