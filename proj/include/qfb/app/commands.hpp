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

#ifndef QFB_APP_COMMANDS_HPP_
#define QFB_APP_COMMANDS_HPP_

#include <ostream>
#include <string>

#include "json.hpp"
#include "qfb/app/config.hpp"

namespace qfb::app {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kDegenerate = 3;
}  // namespace exit_code

const char* tool_version();

/// Sidecar content: tool name and version, command, resolved config.
nlohmann::json run_metadata(const std::string& command, const RunConfig& cfg);

/// metric,value table of one steady-state evaluation.
std::string steady_csv(const RunConfig& cfg);
/// Per-step trajectory rows followed by ensemble-mean rows.
std::string trajectories_csv(const RunConfig& cfg);
/// Long-format sweep table: index, one column per axis, metric, value.
std::string sweep_csv(const RunConfig& cfg);

// Each command writes a human-readable summary to `out` and, when cfg.out is
// set, a CSV file plus PATH.meta.json. Errors propagate as exceptions; the
// CLI maps them to exit codes.
int cmd_steady(const RunConfig& cfg, std::ostream& out);
/// Without cfg.out the CSV goes to `out` and the summary to `err`.
int cmd_trajectories(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& cfg, std::ostream& out);

}  // namespace qfb::app

#endif  // QFB_APP_COMMANDS_HPP_
