// Copyright 2026 The qdilemma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qdilemma {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxDim = 16;
inline constexpr double kUnitaryTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdSlack = 1e-10;

/// Dense square complex matrix acting on 1 to 4 qubits.
///
/// Entries are indexed with qubit 0 as the most significant bit, so the
/// basis state |b0 b1 b2> sits at index b0*4 + b1*2 + b2.
class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix m);

  static Operator identity(std::size_t dim);
  static Operator from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  std::size_t qubits() const;
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

  bool is_unitary(double tol = kUnitaryTol) const;
  bool is_hermitian(double tol = kHermitianTol) const;

  Operator operator*(const Operator& rhs) const;
  Operator operator+(const Operator& rhs) const;
  Operator operator-(const Operator& rhs) const;
  Operator scaled(Complex c) const;
  StateVector apply(const StateVector& v) const;

 private:
  Matrix m_;
};

/// Quantum state as a density matrix.
///
/// Physical states are Hermitian, unit-trace and PSD up to kPsdSlack. Raw
/// states come out of linear-inversion tomography or transcribed data; they
/// are only required to be square with a power-of-two dimension, and the
/// caller can query how far they are from physical.
class DensityMatrix {
 public:
  enum class Mode { Physical, Raw };

  /// Validates every physical invariant; throws std::invalid_argument.
  static DensityMatrix physical(Matrix m);
  static DensityMatrix raw(Matrix m);
  static DensityMatrix pure(const StateVector& psi);
  /// |bits><bits| for a bit string such as "101" (leftmost = qubit 0).
  static DensityMatrix basis(std::string_view bits);

  std::size_t qubits() const { return qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t row, std::size_t col) const { return m_(row, col); }
  Mode mode() const { return mode_; }
  bool is_raw() const { return mode_ == Mode::Raw; }

  Complex trace() const { return m_.trace(); }
  /// max |rho - rho^dagger|
  double hermiticity_defect() const;
  double min_eigenvalue() const;

 private:
  DensityMatrix(Matrix m, Mode mode);

  Matrix m_;
  std::size_t qubits_ = 0;
  Mode mode_ = Mode::Physical;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix vectors;              // columns, matching `values`
  int sweeps = 0;
};

struct SqrtResult {
  Operator root;
  /// Largest magnitude among eigenvalues clamped to zero.
  double clamped = 0.0;
  /// Set when some eigenvalue was below -kPsdSlack.
  bool significant_negative = false;
};

double max_abs(const Matrix& m);
double max_abs_diff(const Matrix& a, const Matrix& b);

Operator kron(const Operator& a, const Operator& b);
Operator kron(std::initializer_list<Operator> factors);
Operator dagger(const Operator& a);

/// rho -> U rho U^dagger. Raw inputs stay raw.
DensityMatrix conjugate_by(const Operator& u, const DensityMatrix& rho);

/// Traces out the highest-numbered (least significant) qubit.
DensityMatrix partial_trace_last(const DensityMatrix& rho);

/// Cyclic complex Jacobi eigensolver for Hermitian matrices up to 16x16.
EigenDecomposition hermitian_eigen(const Matrix& a);

/// Principal square root of a Hermitian matrix, negative eigenvalues clamped.
SqrtResult herm_sqrt(const Operator& a);

/// True iff min_c |c|=1 of ||a - c b||_max <= tol, with c taken from the
/// ratio of the largest-magnitude entries.
bool equal_up_to_global_phase(const Operator& a, const Operator& b, double tol = 1e-12);

}  // namespace qdilemma
