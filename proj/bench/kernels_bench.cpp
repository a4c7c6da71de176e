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


// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include "qfb/loop.hpp"
#include "qfb/metrics.hpp"

namespace {

using namespace qfb;

FeedbackProtocol cooling(std::size_t d) {
  return FeedbackProtocol(depolarizing_channel(d, 0.7), 0.5, 0.5, DensityMatrix::maximally_mixed(d),
                          InLoopStage::reset_to(d, 0));
}

FeedbackProtocol bitflip() {
  return FeedbackProtocol(identity_channel(2), 0.4, 0.4, DensityMatrix::basis_state(2, 0),
                          InLoopStage::projective({pauli_x(), pauli_x()}));
}

void BM_EnsembleSerial(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto p = cooling(d);
  const auto rho0 = DensityMatrix::maximally_mixed(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ensemble_statistics_serial(rho0, p, {512, 50, 1, 1}));
  }
  state.SetItemsProcessed(state.iterations() * 512 * 50);
}

void BM_EnsembleParallel(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto p = cooling(d);
  const auto rho0 = DensityMatrix::maximally_mixed(d);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ensemble_statistics(rho0, p, {512, 50, 1, 0}));
  }
  state.SetItemsProcessed(state.iterations() * 512 * 50);
}

void BM_HaarSerial(benchmark::State& state) {
  const auto p = bitflip();
  const auto nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_avg_bitflip_fidelity_serial(p, nodes));
}

void BM_HaarParallel(benchmark::State& state) {
  const auto p = bitflip();
  const auto nodes = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(haar_avg_bitflip_fidelity(p, nodes));
}

BENCHMARK(BM_EnsembleSerial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_HaarSerial)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_HaarParallel)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
