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

#include <omp.h>

#include <algorithm>
#include <exception>
#include <mutex>

#include "qfb/loop.hpp"
#include "qfb/metrics.hpp"
#include "trajectory_step.hpp"

namespace qfb {

namespace {

constexpr std::size_t kBlock = 64;

void check_spec(const DensityMatrix& rho0, const FeedbackProtocol& p, const EnsembleSpec& spec) {
  if (rho0.dim() != p.dim()) throw DimensionError("ensemble: state dimension mismatch");
  if (spec.trajectories == 0 || spec.steps == 0) {
    throw DomainError("ensemble needs at least one trajectory and one step");
  }
}

int thread_count(const EnsembleSpec& spec) {
  return spec.threads > 0 ? spec.threads : omp_get_max_threads();
}

TrajectorySamples run_one(const DensityMatrix& rho0, const FeedbackProtocol& p,
                          std::size_t steps, std::uint64_t seed, std::size_t id) {
  std::mt19937_64 gen(trajectory_seed(seed, id));
  TrajectorySamples out{id, {}, rho0};
  out.steps.reserve(steps);
  CMatrix rho = rho0.matrix();
  for (std::size_t t = 0; t < steps; ++t) {
    auto b = detail::sample_step(rho, p, gen);
    const double rho11 = p.dim() > 1 ? b.state(1, 1).real() : 0.0;
    out.steps.push_back({b.outcome, b.probability, von_neumann_entropy(b.state, true), rho11});
    rho = b.state.matrix();
    out.final_state = std::move(b.state);
  }
  return out;
}

// Running sums over a set of trajectories.
struct Accumulator {
  std::vector<double> entropy, probability, rho11;
  std::vector<std::vector<std::size_t>> counts;
  CMatrix final_sum;

  Accumulator(std::size_t steps, std::size_t dim, std::size_t outcomes)
      : entropy(steps, 0.0),
        probability(steps, 0.0),
        rho11(steps, 0.0),
        counts(steps, std::vector<std::size_t>(outcomes, 0)),
        final_sum(dim, dim) {}

  void add(const TrajectorySamples& s) {
    for (std::size_t t = 0; t < s.steps.size(); ++t) {
      entropy[t] += s.steps[t].entropy;
      probability[t] += s.steps[t].probability;
      rho11[t] += s.steps[t].rho11;
      ++counts[t][s.steps[t].outcome];
    }
    final_sum += s.final_state.matrix();
  }

  void merge(const Accumulator& o) {
    for (std::size_t t = 0; t < entropy.size(); ++t) {
      entropy[t] += o.entropy[t];
      probability[t] += o.probability[t];
      rho11[t] += o.rho11[t];
      for (std::size_t j = 0; j < counts[t].size(); ++j) counts[t][j] += o.counts[t][j];
    }
    final_sum += o.final_sum;
  }

  EnsembleStatistics finish(std::size_t n) const {
    const double inv = 1.0 / static_cast<double>(n);
    EnsembleStatistics st;
    st.trajectories = n;
    for (std::size_t t = 0; t < entropy.size(); ++t) {
      st.mean_entropy.push_back(entropy[t] * inv);
      st.mean_probability.push_back(probability[t] * inv);
      st.mean_rho11.push_back(rho11[t] * inv);
    }
    st.outcome_counts = counts;
    st.mean_final_state = final_sum * inv;
    return st;
  }
};

// Runs body(i) for i in [0, n) on the OpenMP team, rethrowing the first
// exception on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  std::exception_ptr error;
  std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<TrajectorySamples> run_ensemble(const DensityMatrix& rho0, const FeedbackProtocol& p,
                                            const EnsembleSpec& spec) {
  check_spec(rho0, p, spec);
  std::vector<TrajectorySamples> out(spec.trajectories, TrajectorySamples{0, {}, rho0});
  parallel_for(spec.trajectories, thread_count(spec), [&](std::size_t i) {
    out[i] = run_one(rho0, p, spec.steps, spec.seed, i);
  });
  return out;
}

std::vector<TrajectorySamples> run_ensemble_serial(const DensityMatrix& rho0,
                                                   const FeedbackProtocol& p,
                                                   const EnsembleSpec& spec) {
  check_spec(rho0, p, spec);
  std::vector<TrajectorySamples> out;
  out.reserve(spec.trajectories);
  for (std::size_t i = 0; i < spec.trajectories; ++i) {
    out.push_back(run_one(rho0, p, spec.steps, spec.seed, i));
  }
  return out;
}

EnsembleStatistics ensemble_statistics(const DensityMatrix& rho0, const FeedbackProtocol& p,
                                       const EnsembleSpec& spec) {
  check_spec(rho0, p, spec);
  const std::size_t blocks = (spec.trajectories + kBlock - 1) / kBlock;
  std::vector<Accumulator> partial(blocks, Accumulator(spec.steps, p.dim(), p.outcomes()));
  parallel_for(blocks, thread_count(spec), [&](std::size_t b) {
    const std::size_t end = std::min(spec.trajectories, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      partial[b].add(run_one(rho0, p, spec.steps, spec.seed, i));
    }
  });
  Accumulator total(spec.steps, p.dim(), p.outcomes());
  for (const auto& a : partial) total.merge(a);
  return total.finish(spec.trajectories);
}

EnsembleStatistics ensemble_statistics_serial(const DensityMatrix& rho0,
                                              const FeedbackProtocol& p,
                                              const EnsembleSpec& spec) {
  check_spec(rho0, p, spec);
  Accumulator total(spec.steps, p.dim(), p.outcomes());
  for (std::size_t i = 0; i < spec.trajectories; ++i) {
    total.add(run_one(rho0, p, spec.steps, spec.seed, i));
  }
  return total.finish(spec.trajectories);
}

EnsembleStatistics summarize(std::span<const TrajectorySamples> samples, std::size_t dim,
                             std::size_t outcomes) {
  if (samples.empty()) throw DomainError("summarize: empty ensemble");
  Accumulator total(samples.front().steps.size(), dim, outcomes);
  for (const auto& s : samples) total.add(s);
  return total.finish(samples.size());
}

}  // namespace qfb
