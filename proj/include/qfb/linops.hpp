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

#ifndef QFB_LINOPS_HPP_
#define QFB_LINOPS_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace qfb {

using cplx = std::complex<double>;

namespace tol {
// Global Hermiticity tolerance: deviations above it are errors, below it the
// matrix is symmetrised as (M + M^dagger) / 2.
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kCompleteness = 1e-10;
inline constexpr double kUnitary = 1e-10;
// Eigenvalues in [-kNegativeEigen, 0) are clipped to zero.
inline constexpr double kNegativeEigen = 1e-8;
}  // namespace tol

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense complex matrix, row-major. Spaces in this library are at most a few
/// hundred dimensions, so there is no sparse or blocked storage.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix identity(std::size_t n);
  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix diagonal(std::span<const double> diag);
  static CMatrix diagonal(std::span<const cplx> diag);
  /// |ket><bra| for column vectors given as spans.
  static CMatrix outer(std::span<const cplx> ket, std::span<const cplx> bra);
  /// Matrix unit |row><col| in an n x n space.
  static CMatrix unit(std::size_t n, std::size_t row, std::size_t col);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<cplx> entries() { return data_; }
  std::span<const cplx> entries() const { return data_; }
  /// Column c as a vector.
  std::vector<cplx> column(std::size_t c) const;

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conj() const;
  cplx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  /// max |M - M^dagger|
  double hermiticity_defect() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx scale);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Matrix-vector product.
std::vector<cplx> apply(const CMatrix& m, std::span<const cplx> v);
/// <a|b> with the conjugate on the left argument.
cplx inner(std::span<const cplx> a, std::span<const cplx> b);
double norm(std::span<const cplx> v);

/// max |a - b| entrywise; throws DimensionError on shape mismatch.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// A M A^dagger
CMatrix conjugate(const CMatrix& a, const CMatrix& m);
/// [a, b] = ab - ba
CMatrix commutator(const CMatrix& a, const CMatrix& b);

CMatrix kron(const CMatrix& a, const CMatrix& b);

enum class Keep { A, B };

/// Reduced matrix on one factor of a (dim_a * dim_b)-dimensional space. The
/// joint basis index is a * dim_b + b, matching kron(A, B).
CMatrix partial_trace(const CMatrix& m, std::size_t dim_a, std::size_t dim_b, Keep keep);

/// Column-stacking vectorisation: vec(X)[i + j*n] = X(i, j).
std::vector<cplx> stack_columns(const CMatrix& m);
CMatrix unstack_columns(std::span<const cplx> v, std::size_t n);

/// Throws DomainError if the Hermiticity defect exceeds tol::kHermitian,
/// otherwise returns (M + M^dagger) / 2.
CMatrix hermitize(const CMatrix& m);

bool is_unitary(const CMatrix& u, double tolerance = tol::kUnitary);

struct HermitianEigen {
  std::vector<double> values;  // descending
  CMatrix vectors;             // column k pairs with values[k]
};

/// Cyclic Jacobi diagonalisation with a fixed sweep order, so repeated calls
/// on one platform give bit-identical output.
HermitianEigen hermitian_eigs(const CMatrix& h);
std::vector<double> hermitian_eigenvalues(const CMatrix& h);

struct GeneralEigen {
  std::vector<cplx> values;  // sorted by descending magnitude
  CMatrix vectors;
};

/// Eigendecomposition of an arbitrary square complex matrix.
GeneralEigen general_eigs(const CMatrix& m);

/// Singular values (descending) of a real rows x cols matrix stored row-major,
/// by one-sided Jacobi.
std::vector<double> singular_values(std::span<const double> entries, std::size_t rows,
                                    std::size_t cols);

/// True iff v is majorised by w (v < w): every partial sum of the
/// descending-sorted w dominates the corresponding partial sum of v.
/// Both inputs must be normalised to 1 within 1e-9 and have equal length.
bool is_majorized_by(std::span<const double> v, std::span<const double> w,
                     double tolerance = 1e-12);

}  // namespace qfb

#endif  // QFB_LINOPS_HPP_
