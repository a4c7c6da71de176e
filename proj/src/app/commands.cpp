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

#include "qfb/app/commands.hpp"

#include <omp.h>

#include <exception>
#include <iomanip>
#include <mutex>

#include "qfb/app/csv.hpp"
#include "qfb/app/scenarios.hpp"
#include "qfb/app/validation.hpp"
#include "qfb/metrics.hpp"

#ifndef QFB_VERSION
#define QFB_VERSION "unknown"
#endif

namespace qfb::app {

const char* tool_version() { return QFB_VERSION; }

nlohmann::json run_metadata(const std::string& command, const RunConfig& cfg) {
  nlohmann::json meta;
  meta["tool"] = "qfeedback";
  meta["version"] = tool_version();
  meta["command"] = command;
  meta["config"] = to_json(cfg);
  if (command == "trajectories") meta["initial_state"] = "maximally_mixed";
  return meta;
}

namespace {

void emit(const RunConfig& cfg, const std::string& command, const std::string& csv) {
  write_file(cfg.out, csv);
  write_sidecar(cfg.out, run_metadata(command, cfg));
}

int threads_for(const RunConfig& cfg) { return cfg.threads > 0 ? cfg.threads : omp_get_max_threads(); }

}  // namespace

std::string steady_csv(const RunConfig& cfg) {
  const auto ev = evaluate(cfg);
  CsvTable t({"metric", "value"});
  for (const auto& m : ev.metrics) t.add_row({m.name, format_number(m.value)});
  return t.text();
}

int cmd_steady(const RunConfig& cfg, std::ostream& out) {
  const auto ev = evaluate(cfg);
  out << "scenario " << cfg.scenario << "  d=" << cfg.d << "  tau1=" << cfg.coupling1()
      << "  tau2=" << cfg.coupling2() << "\n";
  out << std::setprecision(10);
  for (const auto& m : ev.metrics) out << "  " << std::left << std::setw(28) << m.name << m.value << "\n";
  if (ev.oracle_deviation) {
    out << "closed-form deviation " << std::scientific << std::setprecision(3) << *ev.oracle_deviation
        << std::defaultfloat << "\n";
  }
  if (!cfg.out.empty()) {
    CsvTable t({"metric", "value"});
    for (const auto& m : ev.metrics) t.add_row({m.name, format_number(m.value)});
    emit(cfg, "steady", t.text());
  }
  return exit_code::kOk;
}

std::string trajectories_csv(const RunConfig& cfg) {
  const auto& info = find_scenario(cfg.scenario);
  if (!info.measurement) {
    throw ConfigError("trajectories need a measurement-feedback scenario, got '" + cfg.scenario + "'");
  }
  const auto p = build_protocol(cfg);
  const auto rho0 = DensityMatrix::maximally_mixed(p.dim());
  const EnsembleSpec spec{cfg.ntraj, cfg.steps, cfg.seed, cfg.threads};
  const auto samples = run_ensemble(rho0, p, spec);
  const auto stats = summarize(samples, p.dim(), p.outcomes());

  CsvTable t({"trajectory_id", "step", "outcome", "probability", "entropy_normalised", "rho11"});
  for (const auto& s : samples) {
    const auto id = std::to_string(s.id);
    for (std::size_t k = 0; k < s.steps.size(); ++k) {
      const auto& st = s.steps[k];
      t.add_row({id, std::to_string(k + 1), std::to_string(st.outcome), format_number(st.probability),
                 format_number(st.entropy), format_number(st.rho11)});
    }
  }
  for (std::size_t k = 0; k < cfg.steps; ++k) {
    t.add_row({"mean", std::to_string(k + 1), "-", format_number(stats.mean_probability[k]),
               format_number(stats.mean_entropy[k]), format_number(stats.mean_rho11[k])});
  }
  return t.text();
}

int cmd_trajectories(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string csv = trajectories_csv(cfg);
  std::ostream& summary = cfg.out.empty() ? err : out;
  if (cfg.out.empty()) {
    out << csv;
  } else {
    emit(cfg, "trajectories", csv);
  }
  summary << "wrote " << cfg.ntraj << " trajectories x " << cfg.steps << " steps (scenario "
          << cfg.scenario << ", seed " << cfg.seed << ")";
  if (!cfg.out.empty()) summary << " to " << cfg.out;
  summary << "\n";
  return exit_code::kOk;
}

std::string sweep_csv(const RunConfig& cfg) {
  if (cfg.axes.empty()) throw ConfigError("sweep needs at least one --axis");
  if (cfg.axes.size() > 2) throw ConfigError("at most two sweep axes are supported");
  const std::size_t n0 = cfg.axes[0].n;
  const std::size_t n1 = cfg.axes.size() > 1 ? cfg.axes[1].n : 1;
  const std::size_t total = n0 * n1;

  std::vector<RunConfig> points(total, cfg);
  for (std::size_t i = 0; i < total; ++i) {
    set_parameter(points[i], cfg.axes[0].name, cfg.axes[0].value(i / n1));
    if (cfg.axes.size() > 1) set_parameter(points[i], cfg.axes[1].name, cfg.axes[1].value(i % n1));
    check_config(points[i]);
  }

  std::vector<Evaluation> results(total);
  std::exception_ptr error;
  std::mutex error_mutex;
  const long n = static_cast<long>(total);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads_for(cfg))
  for (long i = 0; i < n; ++i) {
    try {
      results[i] = evaluate(points[i]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  std::vector<std::string> header{"index"};
  for (const auto& ax : cfg.axes) header.push_back(ax.name);
  header.push_back("metric");
  header.push_back("value");
  CsvTable t(header);
  for (std::size_t i = 0; i < total; ++i) {
    std::vector<std::string> prefix{std::to_string(i), format_number(cfg.axes[0].value(i / n1))};
    if (cfg.axes.size() > 1) prefix.push_back(format_number(cfg.axes[1].value(i % n1)));
    for (const auto& m : results[i].metrics) {
      auto row = prefix;
      row.push_back(m.name);
      row.push_back(format_number(m.value));
      t.add_row(row);
    }
  }
  return t.text();
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string csv = sweep_csv(cfg);
  std::ostream& summary = cfg.out.empty() ? err : out;
  if (cfg.out.empty()) {
    out << csv;
  } else {
    emit(cfg, "sweep", csv);
  }
  std::size_t points = 1;
  for (const auto& ax : cfg.axes) points *= ax.n;
  summary << "swept " << points << " points of scenario " << cfg.scenario;
  if (!cfg.out.empty()) summary << " to " << cfg.out;
  summary << "\n";
  return exit_code::kOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const auto results = run_validation(cfg.threads);
  bool all = true;
  CsvTable t({"check", "passed", "seconds", "detail"});
  out << std::left;
  for (const auto& r : results) {
    all = all && r.passed;
    out << (r.passed ? "PASS  " : "FAIL  ") << std::setw(34) << r.name << std::right << std::fixed
        << std::setprecision(2) << std::setw(8) << r.seconds << "s  " << std::left << r.detail << "\n";
    std::string detail = r.detail;
    for (auto& c : detail) {
      if (c == ',' || c == '\n') c = ';';
    }
    t.add_row({r.name, r.passed ? "1" : "0", format_number(r.seconds), detail});
  }
  out << std::defaultfloat << (all ? "all checks passed" : "some checks FAILED") << "\n";
  if (!cfg.out.empty()) emit(cfg, "validate", t.text());
  return all ? exit_code::kOk : exit_code::kValidationFailure;
}

}  // namespace qfb::app
