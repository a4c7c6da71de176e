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

#ifndef QFB_LOOP_HPP_
#define QFB_LOOP_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "qfb/linops.hpp"
#include "qfb/quantum.hpp"

namespace qfb {

// ---------------------------------------------------------------------------
// In-loop processing of the controller.

/// Coherent feedback: a single unitary on the controller.
struct CoherentStage {
  CMatrix unitary;
};

/// Projective measurement in the basis given by the columns of `basis`,
/// followed by feedback[j] on outcome j.
struct ProjectiveStage {
  CMatrix basis;
  std::vector<CMatrix> feedback;
};

/// General measurement with controller Kraus operators K_j (feedback unitaries
/// already absorbed, K_j = U_j P_j).
struct PovmStage {
  std::vector<CMatrix> kraus;
};

class InLoopStage {
 public:
  using Variant = std::variant<CoherentStage, ProjectiveStage, PovmStage>;

  static InLoopStage coherent(CMatrix unitary);
  static InLoopStage projective(CMatrix basis, std::vector<CMatrix> feedback);
  /// Computational-basis measurement with per-outcome feedback.
  static InLoopStage projective(std::vector<CMatrix> feedback);
  static InLoopStage povm(std::vector<CMatrix> kraus);

  /// Measure in the computational basis and rotate every outcome onto |target>.
  static InLoopStage reset_to(std::size_t d, std::size_t target);
  /// Measure in `basis` and rotate every outcome onto the unit vector `target`.
  static InLoopStage reset_to(const CMatrix& basis, std::span<const cplx> target);

  const Variant& variant() const { return stage_; }
  bool is_coherent() const { return std::holds_alternative<CoherentStage>(stage_); }
  std::size_t dim() const { return dim_; }
  std::size_t outcomes() const { return controller_kraus_.size(); }
  /// Controller-side Kraus operators, one per outcome. CF has a single one.
  const std::vector<CMatrix>& controller_kraus() const { return controller_kraus_; }
  /// sum_j K_j eta K_j^dagger
  CMatrix apply_to_controller(const CMatrix& eta) const;

 private:
  InLoopStage(Variant stage, std::vector<CMatrix> kraus);
  Variant stage_;
  std::size_t dim_ = 0;
  std::vector<CMatrix> controller_kraus_;
};

// ---------------------------------------------------------------------------
// One feedback cycle: noise, first coupling, in-loop stage, second coupling,
// controller reset.

class FeedbackProtocol {
 public:
  FeedbackProtocol(KrausChannel noise, double tau1, double tau2, DensityMatrix eta,
                   InLoopStage stage);

  std::size_t dim() const { return dim_; }
  const KrausChannel& noise() const { return noise_; }
  double tau1() const { return tau1_; }
  double tau2() const { return tau2_; }
  const DensityMatrix& eta() const { return eta_; }
  const InLoopStage& stage() const { return stage_; }
  std::size_t outcomes() const { return branch_kraus_.size(); }

  /// System-side Kraus operators of branch j, controller already traced out.
  /// Composing them with the noise channel gives the branch map.
  const std::vector<CMatrix>& branch_kraus(std::size_t j) const { return branch_kraus_[j]; }

  /// Same protocol with different couplings.
  FeedbackProtocol with_couplings(double tau1, double tau2) const;

 private:
  std::size_t dim_;
  KrausChannel noise_;
  double tau1_;
  double tau2_;
  DensityMatrix eta_;
  InLoopStage stage_;
  std::vector<std::vector<CMatrix>> branch_kraus_;
};

/// Unnormalised system output of every outcome branch for an arbitrary input
/// operator; their sum is the unconditional cycle.
std::vector<CMatrix> branch_outputs(const CMatrix& rho, const FeedbackProtocol& p);
/// Linear extension of one unconditional cycle to any operator.
CMatrix cycle_linear(const CMatrix& x, const FeedbackProtocol& p);
DensityMatrix cycle_unconditional(const DensityMatrix& rho, const FeedbackProtocol& p);

/// Independent joint-space evaluation of one cycle: build rho_N (x) eta,
/// conjugate by the couplings and the in-loop operators explicitly, trace out
/// the controller. Slow, used as a cross-check for the compressed path.
std::vector<CMatrix> branch_outputs_joint(const CMatrix& rho, const FeedbackProtocol& p);

/// Everything about one measurement branch: the probability, the normalised
/// system and controller states right after the in-loop stage, and the
/// normalised system output after the second coupling.
struct BranchDetail {
  std::size_t outcome;
  double probability;
  DensityMatrix system_mid;
  DensityMatrix controller_mid;
  DensityMatrix output;
};
/// Branches with probability below 1e-15 are omitted.
std::vector<BranchDetail> branch_details(const DensityMatrix& rho, const FeedbackProtocol& p);

// ---------------------------------------------------------------------------
// Superoperator and steady state.

/// d^2 x d^2 matrix acting on column-stacked operators.
struct Superoperator {
  std::size_t dim;
  CMatrix matrix;

  CMatrix apply(const CMatrix& x) const;
};

Superoperator build_superoperator(const FeedbackProtocol& p);
/// Superoperator of a Kraus list, sum_k conj(K) (x) K.
Superoperator kraus_superoperator(std::span<const CMatrix> kraus);

class DegenerateSteadyState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SteadyState {
  DensityMatrix state;
  double gap;                      // 1 - |second eigenvalue|
  std::vector<cplx> eigenvalues;   // superoperator spectrum, descending magnitude
};

/// Fixed point from the eigenvector of the superoperator eigenvalue nearest 1.
/// Throws DegenerateSteadyState when more than one eigenvalue has magnitude
/// within 1e-8 of one.
SteadyState steady_state(const FeedbackProtocol& p);

struct FixedPointResult {
  DensityMatrix state;
  std::size_t iterations;
  double residual;  // max-norm of the last update
};

/// Iterates the cycle from rho0 until the max-norm change drops below
/// tolerance or max_iterations is reached.
FixedPointResult iterate_to_fixed_point(const FeedbackProtocol& p, const DensityMatrix& rho0,
                                        std::size_t max_iterations, double tolerance = 0.0);

// ---------------------------------------------------------------------------
// Conditional dynamics.

struct TrajectoryRecord {
  std::size_t step;      // 1-based cycle count
  std::size_t outcome;
  double probability;    // probability of the sampled outcome given the past
  DensityMatrix state;   // post-cycle conditional state
  double entropy;        // von Neumann entropy, base-d normalised
};

/// Branch probabilities below this are never sampled.
inline constexpr double kProbabilityFloor = 1e-15;

/// Seed for trajectory `index` of an ensemble seeded with `seed`.
std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t index);

/// Samples one filtered trajectory. Coherent stages are deterministic
/// (outcome 0, probability 1). Identical seeds give identical records.
std::vector<TrajectoryRecord> sample_trajectory(const DensityMatrix& rho0,
                                                const FeedbackProtocol& p, std::size_t steps,
                                                std::uint64_t seed);

// ---------------------------------------------------------------------------
// Trajectory ensembles. The OpenMP kernels split work over trajectories; the
// *_serial functions are single-threaded references with the same outputs.

struct EnsembleSpec {
  std::size_t trajectories = 1;
  std::size_t steps = 1;
  std::uint64_t seed = 0;
  int threads = 0;  // <= 0: OpenMP default
};

/// Compact per-step sample of a trajectory.
struct StepSample {
  std::size_t outcome;
  double probability;
  double entropy;
  double rho11;
};

struct TrajectorySamples {
  std::size_t id;
  std::vector<StepSample> steps;
  DensityMatrix final_state;
};

/// Per-step averages over an ensemble. The parallel kernel reduces fixed
/// blocks of trajectories and combines them in block order, so the result does
/// not depend on the thread count.
struct EnsembleStatistics {
  std::size_t trajectories = 0;
  std::vector<double> mean_entropy;
  std::vector<double> mean_probability;
  std::vector<double> mean_rho11;
  std::vector<std::vector<std::size_t>> outcome_counts;  // [step][outcome]
  CMatrix mean_final_state;
};

std::vector<TrajectorySamples> run_ensemble(const DensityMatrix& rho0, const FeedbackProtocol& p,
                                            const EnsembleSpec& spec);
std::vector<TrajectorySamples> run_ensemble_serial(const DensityMatrix& rho0,
                                                   const FeedbackProtocol& p,
                                                   const EnsembleSpec& spec);

EnsembleStatistics ensemble_statistics(const DensityMatrix& rho0, const FeedbackProtocol& p,
                                       const EnsembleSpec& spec);
EnsembleStatistics ensemble_statistics_serial(const DensityMatrix& rho0,
                                              const FeedbackProtocol& p,
                                              const EnsembleSpec& spec);

/// Statistics of an already sampled ensemble.
EnsembleStatistics summarize(std::span<const TrajectorySamples> samples, std::size_t dim,
                             std::size_t outcomes);

}  // namespace qfb

#endif  // QFB_LOOP_HPP_
