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

#include <cmath>
#include <string>

#include "qfb/loop.hpp"

namespace qfb {

namespace {

void require_unitary(const CMatrix& u, const char* what) {
  if (!is_unitary(u)) throw DomainError(std::string(what) + " is not unitary");
}

void require_coupling(double tau, const char* name) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(tau));
  }
}

}  // namespace

InLoopStage::InLoopStage(Variant stage, std::vector<CMatrix> kraus)
    : stage_(std::move(stage)), controller_kraus_(std::move(kraus)) {
  dim_ = controller_kraus_.front().rows();
  // Completeness is checked by KrausChannel.
  KrausChannel check(controller_kraus_);
  (void)check;
}

InLoopStage InLoopStage::coherent(CMatrix unitary) {
  require_unitary(unitary, "CF in-loop operator");
  std::vector<CMatrix> kraus{unitary};
  return InLoopStage(CoherentStage{std::move(unitary)}, std::move(kraus));
}

InLoopStage InLoopStage::projective(CMatrix basis, std::vector<CMatrix> feedback) {
  require_unitary(basis, "measurement basis");
  const std::size_t d = basis.rows();
  if (feedback.size() != d) {
    throw DimensionError("projective stage needs one feedback unitary per outcome (" +
                         std::to_string(d) + "), got " + std::to_string(feedback.size()));
  }
  std::vector<CMatrix> kraus;
  kraus.reserve(d);
  for (std::size_t j = 0; j < d; ++j) {
    require_unitary(feedback[j], "feedback unitary");
    if (feedback[j].rows() != d) throw DimensionError("feedback unitary dimension mismatch");
    const auto bj = basis.column(j);
    kraus.push_back(feedback[j] * CMatrix::outer(bj, bj));
  }
  return InLoopStage(ProjectiveStage{std::move(basis), std::move(feedback)}, std::move(kraus));
}

InLoopStage InLoopStage::projective(std::vector<CMatrix> feedback) {
  if (feedback.empty()) throw DimensionError("projective stage needs feedback unitaries");
  const std::size_t d = feedback.front().rows();
  return projective(CMatrix::identity(d), std::move(feedback));
}

InLoopStage InLoopStage::povm(std::vector<CMatrix> kraus) {
  if (kraus.empty()) throw DimensionError("POVM stage needs Kraus operators");
  std::vector<CMatrix> copy = kraus;
  return InLoopStage(PovmStage{std::move(kraus)}, std::move(copy));
}

InLoopStage InLoopStage::reset_to(std::size_t d, std::size_t target) {
  return reset_to(CMatrix::identity(d), basis_vector(d, target));
}

InLoopStage InLoopStage::reset_to(const CMatrix& basis, std::span<const cplx> target) {
  std::vector<CMatrix> feedback;
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    feedback.push_back(unitary_mapping(basis.column(j), target));
  }
  return projective(basis, std::move(feedback));
}

CMatrix InLoopStage::apply_to_controller(const CMatrix& eta) const {
  CMatrix out(dim_, dim_);
  for (const auto& k : controller_kraus_) out += conjugate(k, eta);
  return out;
}

FeedbackProtocol::FeedbackProtocol(KrausChannel noise, double tau1, double tau2,
                                   DensityMatrix eta, InLoopStage stage)
    : dim_(noise.dim()),
      noise_(std::move(noise)),
      tau1_(tau1),
      tau2_(tau2),
      eta_(std::move(eta)),
      stage_(std::move(stage)) {
  require_coupling(tau1_, "tau1");
  require_coupling(tau2_, "tau2");
  if (eta_.dim() != dim_ || stage_.dim() != dim_) {
    throw DimensionError("system, controller and in-loop stage dimensions differ");
  }

  // Compress the controller out of the cycle: with eta = sum_k e_k |u_k><u_k|
  // branch j acts on the system as sum_{k,m} M ρ M^dagger where
  // M = sqrt(e_k) (I (x) <m|) U2 (I (x) K_j) U1 (I (x) |u_k>).
  const std::size_t d = dim_;
  const CMatrix u1 = partial_swap(d, tau1_);
  const CMatrix u2 = partial_swap(d, tau2_);
  const auto eta_eig = hermitian_eigs(eta_.matrix());
  const CMatrix eye = CMatrix::identity(d);

  branch_kraus_.reserve(stage_.outcomes());
  for (const auto& k : stage_.controller_kraus()) {
    const CMatrix w = u2 * kron(eye, k) * u1;
    std::vector<CMatrix> ops;
    for (std::size_t e = 0; e < d; ++e) {
      const double weight = eta_eig.values[e];
      if (weight <= 0.0) continue;
      const double amp = std::sqrt(weight);
      for (std::size_t m = 0; m < d; ++m) {
        CMatrix op(d, d);
        for (std::size_t a = 0; a < d; ++a)
          for (std::size_t b = 0; b < d; ++b) {
            cplx s = 0.0;
            for (std::size_t n = 0; n < d; ++n) s += w(a * d + m, b * d + n) * eta_eig.vectors(n, e);
            op(a, b) = amp * s;
          }
        if (op.max_abs() > 0.0) ops.push_back(std::move(op));
      }
    }
    if (ops.empty()) ops.emplace_back(d, d);
    branch_kraus_.push_back(std::move(ops));
  }
}

FeedbackProtocol FeedbackProtocol::with_couplings(double tau1, double tau2) const {
  return FeedbackProtocol(noise_, tau1, tau2, eta_, stage_);
}

std::vector<CMatrix> branch_outputs(const CMatrix& rho, const FeedbackProtocol& p) {
  const CMatrix noisy = p.noise().apply(rho);
  std::vector<CMatrix> out;
  out.reserve(p.outcomes());
  for (std::size_t j = 0; j < p.outcomes(); ++j) {
    CMatrix acc(p.dim(), p.dim());
    for (const auto& k : p.branch_kraus(j)) acc += conjugate(k, noisy);
    out.push_back(std::move(acc));
  }
  return out;
}

CMatrix cycle_linear(const CMatrix& x, const FeedbackProtocol& p) {
  auto branches = branch_outputs(x, p);
  CMatrix total = std::move(branches.front());
  for (std::size_t j = 1; j < branches.size(); ++j) total += branches[j];
  return total;
}

DensityMatrix cycle_unconditional(const DensityMatrix& rho, const FeedbackProtocol& p) {
  if (rho.dim() != p.dim()) throw DimensionError("cycle: state dimension mismatch");
  return DensityMatrix::from_matrix(cycle_linear(rho.matrix(), p));
}

namespace {

struct JointBranch {
  CMatrix mid;     // joint state after the in-loop operator
  CMatrix output;  // system output, unnormalised
};

std::vector<JointBranch> joint_branches(const CMatrix& rho, const FeedbackProtocol& p) {
  const std::size_t d = p.dim();
  const CMatrix noisy = p.noise().apply(rho);
  const CMatrix u1 = partial_swap(d, p.tau1());
  const CMatrix u2 = partial_swap(d, p.tau2());
  const CMatrix joint = conjugate(u1, kron(noisy, p.eta().matrix()));
  const CMatrix eye = CMatrix::identity(d);
  std::vector<JointBranch> out;
  for (const auto& k : p.stage().controller_kraus()) {
    CMatrix mid = conjugate(kron(eye, k), joint);
    CMatrix after = conjugate(u2, mid);
    out.push_back({std::move(mid), partial_trace(after, d, d, Keep::A)});
  }
  return out;
}

}  // namespace

std::vector<CMatrix> branch_outputs_joint(const CMatrix& rho, const FeedbackProtocol& p) {
  std::vector<CMatrix> out;
  for (auto& b : joint_branches(rho, p)) out.push_back(std::move(b.output));
  return out;
}

std::vector<BranchDetail> branch_details(const DensityMatrix& rho, const FeedbackProtocol& p) {
  const std::size_t d = p.dim();
  std::vector<BranchDetail> out;
  auto branches = joint_branches(rho.matrix(), p);
  for (std::size_t j = 0; j < branches.size(); ++j) {
    const double prob = branches[j].output.trace().real();
    if (prob < kProbabilityFloor) continue;
    out.push_back({j, prob,
                   DensityMatrix::normalized(partial_trace(branches[j].mid, d, d, Keep::A)),
                   DensityMatrix::normalized(partial_trace(branches[j].mid, d, d, Keep::B)),
                   DensityMatrix::normalized(branches[j].output)});
  }
  return out;
}

}  // namespace qfb
