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

#include <random>

#include "qfb/loop.hpp"
#include "qfb/metrics.hpp"
#include "trajectory_step.hpp"

namespace qfb {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

namespace detail {

double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

SampledBranch sample_step(const CMatrix& rho, const FeedbackProtocol& p, std::mt19937_64& gen) {
  auto branches = branch_outputs(rho, p);
  std::vector<double> probs(branches.size());
  double total = 0.0;
  for (std::size_t j = 0; j < branches.size(); ++j) {
    const double pj = branches[j].trace().real();
    probs[j] = pj >= kProbabilityFloor ? pj : 0.0;
    total += probs[j];
  }
  if (!(total > 0.0)) throw DomainError("all branch probabilities vanish");

  // Single-outcome stages consume no random numbers.
  std::size_t pick = branches.size() - 1;
  if (branches.size() > 1) {
    const double u = uniform01(gen) * total;
    double acc = 0.0;
    for (std::size_t j = 0; j < branches.size(); ++j) {
      if (probs[j] == 0.0) continue;
      acc += probs[j];
      pick = j;
      if (u < acc) break;
    }
  }
  return {pick, probs[pick] / total, DensityMatrix::normalized(branches[pick])};
}

}  // namespace detail

std::vector<TrajectoryRecord> sample_trajectory(const DensityMatrix& rho0,
                                                const FeedbackProtocol& p, std::size_t steps,
                                                std::uint64_t seed) {
  if (rho0.dim() != p.dim()) throw DimensionError("trajectory: state dimension mismatch");
  std::mt19937_64 gen(seed);
  std::vector<TrajectoryRecord> out;
  out.reserve(steps);
  DensityMatrix rho = rho0;
  for (std::size_t t = 1; t <= steps; ++t) {
    auto b = detail::sample_step(rho.matrix(), p, gen);
    rho = b.state;
    out.push_back({t, b.outcome, b.probability, std::move(b.state),
                   von_neumann_entropy(rho, /*normalised=*/true)});
  }
  return out;
}

}  // namespace qfb
