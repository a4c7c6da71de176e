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

#include "qfb/app/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace qfb::app {

using nlohmann::json;

double AxisSpec::value(std::size_t i) const {
  if (n == 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

namespace {

double parse_number(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw ConfigError("cannot parse " + what + " '" + s + "'");
  return v;
}

constexpr std::array<const char*, 11> kSweepable = {"tau",  "tau1", "tau2", "lambda", "gamma", "eta0",
                                                    "chi",  "phi1", "phi2", "a",      "b"};

void in_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ConfigError(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config field '") + key + "' has the wrong type");
  }
}

void apply_eta(RunConfig& cfg, const json& eta) {
  if (eta.is_string()) {
    const auto s = eta.get<std::string>();
    if (s == "noisy") {
      cfg.eta.kind = EtaSetting::Kind::Noisy;
    } else if (s == "clean") {
      cfg.eta.kind = EtaSetting::Kind::Clean;
    } else {
      throw ConfigError("unknown controller preset '" + s + "'");
    }
    return;
  }
  if (!eta.is_object()) throw ConfigError("config field 'eta' must be an object");
  if (eta.contains("preset")) {
    apply_eta(cfg, eta.at("preset"));
  } else if (eta.contains("eta0")) {
    cfg.eta.kind = EtaSetting::Kind::Eta0;
    cfg.eta.eta0 = get_as<double>(eta.at("eta0"), "eta.eta0");
  } else {
    throw ConfigError("config field 'eta' needs 'preset' or 'eta0'");
  }
}

// Shortest text that parses back to the same double.
std::string shortest(double v) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

}  // namespace

AxisSpec parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw ConfigError("axis must look like name:lo:hi:n, got '" + text + "'");
  AxisSpec ax;
  ax.name = parts[0];
  if (!is_sweepable(ax.name)) throw ConfigError("parameter '" + ax.name + "' cannot be swept");
  ax.lo = parse_number(parts[1], "axis lower bound");
  ax.hi = parse_number(parts[2], "axis upper bound");
  const double n = parse_number(parts[3], "axis point count");
  if (!(n >= 1.0) || n != static_cast<double>(static_cast<std::size_t>(n))) {
    throw ConfigError("axis point count must be a positive integer");
  }
  ax.n = static_cast<std::size_t>(n);
  return ax;
}

bool is_sweepable(const std::string& name) {
  for (const char* s : kSweepable) {
    if (name == s) return true;
  }
  return false;
}

void set_parameter(RunConfig& cfg, const std::string& name, double value) {
  if (name == "tau") {
    cfg.tau = value;
  } else if (name == "tau1") {
    cfg.tau1 = value;
  } else if (name == "tau2") {
    cfg.tau2 = value;
  } else if (name == "lambda") {
    cfg.lambda = value;
  } else if (name == "gamma") {
    cfg.gamma = value;
  } else if (name == "eta0") {
    cfg.eta.kind = EtaSetting::Kind::Eta0;
    cfg.eta.eta0 = value;
  } else if (name == "chi") {
    cfg.chi = value;
  } else if (name == "phi1") {
    cfg.phi1 = value;
  } else if (name == "phi2") {
    cfg.phi2 = value;
  } else if (name == "a") {
    cfg.a = value;
  } else if (name == "b") {
    cfg.b = value;
  } else {
    throw ConfigError("parameter '" + name + "' cannot be swept");
  }
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
}

void check_config(const RunConfig& cfg) {
  if (cfg.d < 2 || cfg.d > 16) throw ConfigError("d must lie in [2, 16]");
  in_unit(cfg.tau, "tau");
  in_unit(cfg.coupling1(), "tau1");
  in_unit(cfg.coupling2(), "tau2");
  in_unit(cfg.lambda, "lambda");
  in_unit(cfg.gamma, "gamma");
  in_unit(cfg.a, "a");
  in_unit(cfg.b, "b");
  if (cfg.eta.kind == EtaSetting::Kind::Eta0) in_unit(cfg.eta.eta0, "eta0");
  if (cfg.steps == 0) throw ConfigError("steps must be positive");
  if (cfg.ntraj == 0) throw ConfigError("ntraj must be positive");
  if (cfg.axes.size() > 2) throw ConfigError("at most two sweep axes are supported");
  std::set<std::string> names;
  for (const auto& ax : cfg.axes) {
    if (!names.insert(ax.name).second) throw ConfigError("axis '" + ax.name + "' given twice");
  }
}

RunConfig resolve_config(const json& doc, const Overrides& flags) {
  RunConfig cfg;
  if (!doc.is_null() && !doc.is_object()) throw ConfigError("config must be a JSON object");
  if (doc.is_object()) {
    for (const auto& [key, val] : doc.items()) {
      if (key == "scenario") {
        cfg.scenario = get_as<std::string>(val, "scenario");
      } else if (key == "d") {
        cfg.d = get_as<std::size_t>(val, "d");
      } else if (key == "tau") {
        cfg.tau = get_as<double>(val, "tau");
      } else if (key == "tau1") {
        cfg.tau1 = get_as<double>(val, "tau1");
      } else if (key == "tau2") {
        cfg.tau2 = get_as<double>(val, "tau2");
      } else if (key == "lambda") {
        cfg.lambda = get_as<double>(val, "lambda");
      } else if (key == "gamma") {
        cfg.gamma = get_as<double>(val, "gamma");
      } else if (key == "eta") {
        apply_eta(cfg, val);
      } else if (key == "stage") {
        if (!val.is_object()) throw ConfigError("config field 'stage' must be an object");
        for (const auto& [sk, sv] : val.items()) {
          if (sk == "chi" || sk == "phi1" || sk == "phi2" || sk == "a" || sk == "b") {
            set_parameter(cfg, sk, get_as<double>(sv, sk.c_str()));
          } else {
            throw ConfigError("unknown stage field '" + sk + "'");
          }
        }
      } else if (key == "seed") {
        cfg.seed = get_as<std::uint64_t>(val, "seed");
      } else if (key == "steps") {
        cfg.steps = get_as<std::size_t>(val, "steps");
      } else if (key == "ntraj") {
        cfg.ntraj = get_as<std::size_t>(val, "ntraj");
      } else if (key == "threads") {
        cfg.threads = get_as<int>(val, "threads");
      } else if (key == "out") {
        cfg.out = get_as<std::string>(val, "out");
      } else if (key == "axes") {
        if (!val.is_array()) throw ConfigError("config field 'axes' must be an array");
        for (const auto& a : val) cfg.axes.push_back(parse_axis(get_as<std::string>(a, "axes")));
      } else {
        throw ConfigError("unknown config field '" + key + "'");
      }
    }
  }

  if (flags.scenario) cfg.scenario = *flags.scenario;
  if (flags.d) cfg.d = *flags.d;
  if (flags.tau) cfg.tau = *flags.tau;
  if (flags.tau1) cfg.tau1 = *flags.tau1;
  if (flags.tau2) cfg.tau2 = *flags.tau2;
  if (flags.lambda) cfg.lambda = *flags.lambda;
  if (flags.gamma) cfg.gamma = *flags.gamma;
  if (flags.eta0) set_parameter(cfg, "eta0", *flags.eta0);
  if (flags.seed) cfg.seed = *flags.seed;
  if (flags.steps) cfg.steps = *flags.steps;
  if (flags.ntraj) cfg.ntraj = *flags.ntraj;
  if (flags.threads) cfg.threads = *flags.threads;
  if (flags.out) cfg.out = *flags.out;
  if (!flags.axes.empty()) {
    cfg.axes.clear();
    for (const auto& a : flags.axes) cfg.axes.push_back(parse_axis(a));
  }
  check_config(cfg);
  return cfg;
}

json to_json(const RunConfig& cfg) {
  json j;
  j["scenario"] = cfg.scenario;
  j["d"] = cfg.d;
  j["tau"] = cfg.tau;
  if (cfg.tau1) j["tau1"] = *cfg.tau1;
  if (cfg.tau2) j["tau2"] = *cfg.tau2;
  j["lambda"] = cfg.lambda;
  j["gamma"] = cfg.gamma;
  switch (cfg.eta.kind) {
    case EtaSetting::Kind::Default:
      break;
    case EtaSetting::Kind::Noisy:
      j["eta"] = {{"preset", "noisy"}};
      break;
    case EtaSetting::Kind::Clean:
      j["eta"] = {{"preset", "clean"}};
      break;
    case EtaSetting::Kind::Eta0:
      j["eta"] = {{"eta0", cfg.eta.eta0}};
      break;
  }
  j["stage"] = {{"chi", cfg.chi}, {"phi1", cfg.phi1}, {"phi2", cfg.phi2}, {"a", cfg.a}, {"b", cfg.b}};
  j["seed"] = cfg.seed;
  j["steps"] = cfg.steps;
  j["ntraj"] = cfg.ntraj;
  j["threads"] = cfg.threads;
  j["out"] = cfg.out;
  json axes = json::array();
  for (const auto& ax : cfg.axes) {
    axes.push_back(ax.name + ":" + shortest(ax.lo) + ":" + shortest(ax.hi) + ":" + std::to_string(ax.n));
  }
  j["axes"] = axes;
  return j;
}

}  // namespace qfb::app
