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


// Random states and unitaries for property tests.

#ifndef QFB_TESTS_SUPPORT_HPP_
#define QFB_TESTS_SUPPORT_HPP_

#include <random>

#include "qfb/linops.hpp"
#include "qfb/quantum.hpp"

namespace qfb::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double gauss() { return std::normal_distribution<double>()(gen_); }
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }

 private:
  std::mt19937_64 gen_;
};

inline CMatrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  CMatrix m(r, c);
  for (auto& z : m.entries()) z = {rng.gauss(), rng.gauss()};
  return m;
}

inline CMatrix random_hermitian(std::size_t d, Rng& rng) {
  const CMatrix g = random_matrix(d, d, rng);
  return (g + g.adjoint()) * cplx(0.5);
}

// QR of a Gaussian matrix via modified Gram-Schmidt.
inline CMatrix random_unitary(std::size_t d, Rng& rng) {
  CMatrix g = random_matrix(d, d, rng);
  CMatrix q(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<cplx> v = g.column(c);
    for (std::size_t k = 0; k < c; ++k) {
      const auto qk = q.column(k);
      const cplx ov = inner(qk, v);
      for (std::size_t i = 0; i < d; ++i) v[i] -= ov * qk[i];
    }
    const double n = norm(v);
    for (std::size_t i = 0; i < d; ++i) q(i, c) = v[i] / n;
  }
  return q;
}

inline DensityMatrix random_state(std::size_t d, Rng& rng) {
  const CMatrix g = random_matrix(d, d, rng);
  return DensityMatrix::normalized(g * g.adjoint());
}

inline std::vector<cplx> random_ket(std::size_t d, Rng& rng) {
  std::vector<cplx> v(d);
  for (auto& z : v) z = {rng.gauss(), rng.gauss()};
  const double n = norm(v);
  for (auto& z : v) z /= n;
  return v;
}

}  // namespace qfb::testing

#endif  // QFB_TESTS_SUPPORT_HPP_
