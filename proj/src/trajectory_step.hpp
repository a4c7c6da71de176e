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

// Internal: one sampled cycle, shared by single trajectories and ensembles.

#ifndef QFB_SRC_TRAJECTORY_STEP_HPP_
#define QFB_SRC_TRAJECTORY_STEP_HPP_

#include <random>

#include "qfb/loop.hpp"

namespace qfb::detail {

struct SampledBranch {
  std::size_t outcome;
  double probability;
  DensityMatrix state;
};

double uniform01(std::mt19937_64& gen);
SampledBranch sample_step(const CMatrix& rho, const FeedbackProtocol& p, std::mt19937_64& gen);

}  // namespace qfb::detail

#endif  // QFB_SRC_TRAJECTORY_STEP_HPP_
