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

#include "qdilemma/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qdilemma {

namespace {

constexpr double kJacobiThreshold = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

bool valid_dim(Eigen::Index d) {
  return d >= 2 && static_cast<std::size_t>(d) <= kMaxDim && std::has_single_bit(static_cast<std::size_t>(d));
}

void require_square_pow2(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || !valid_dim(m.rows())) {
    throw std::invalid_argument(std::string(what) + ": dimension must be a power of two in [2, 16], got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

Operator::Operator(Matrix m) : m_(std::move(m)) { require_square_pow2(m_, "Operator"); }

Operator Operator::identity(std::size_t dim) {
  return Operator(Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

Operator Operator::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) throw std::invalid_argument("Operator::from_rows: ragged rows");
    Eigen::Index j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return Operator(std::move(m));
}

std::size_t Operator::qubits() const { return static_cast<std::size_t>(std::countr_zero(dim())); }

bool Operator::is_unitary(double tol) const {
  return max_abs_diff(m_ * m_.adjoint(), Matrix::Identity(m_.rows(), m_.cols())) <= tol;
}

bool Operator::is_hermitian(double tol) const { return max_abs_diff(m_, m_.adjoint()) <= tol; }

Operator Operator::operator*(const Operator& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("Operator product: dimension mismatch");
  return Operator(m_ * rhs.m_);
}

Operator Operator::operator+(const Operator& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("Operator sum: dimension mismatch");
  return Operator(m_ + rhs.m_);
}

Operator Operator::operator-(const Operator& rhs) const {
  if (dim() != rhs.dim()) throw std::invalid_argument("Operator difference: dimension mismatch");
  return Operator(m_ - rhs.m_);
}

Operator Operator::scaled(Complex c) const { return Operator(m_ * c); }

StateVector Operator::apply(const StateVector& v) const {
  if (static_cast<std::size_t>(v.size()) != dim()) throw std::invalid_argument("Operator::apply: dimension mismatch");
  return m_ * v;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(Matrix m, Mode mode)
    : m_(std::move(m)), qubits_(static_cast<std::size_t>(std::countr_zero(static_cast<std::size_t>(m_.rows())))),
      mode_(mode) {}

DensityMatrix DensityMatrix::physical(Matrix m) {
  require_square_pow2(m, "DensityMatrix");
  if (max_abs_diff(m, m.adjoint()) > kHermitianTol) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(m.trace() - Complex(1.0)) > kTraceTol) throw std::invalid_argument("DensityMatrix: trace is not 1");
  const auto eig = hermitian_eigen(m);
  if (eig.values.front() < -kPsdSlack) throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  return DensityMatrix(std::move(m), Mode::Physical);
}

DensityMatrix DensityMatrix::raw(Matrix m) {
  require_square_pow2(m, "DensityMatrix");
  return DensityMatrix(std::move(m), Mode::Raw);
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  const StateVector u = psi / norm;
  return physical(hermitian_part(u * u.adjoint()));
}

DensityMatrix DensityMatrix::basis(std::string_view bits) {
  if (bits.empty() || bits.size() > 4) throw std::invalid_argument("DensityMatrix::basis: need 1 to 4 bits");
  std::size_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("DensityMatrix::basis: bits must be 0 or 1");
    index = index * 2 + static_cast<std::size_t>(c - '0');
  }
  const auto dim = Eigen::Index{1} << bits.size();
  Matrix m = Matrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m), Mode::Physical);
}

double DensityMatrix::hermiticity_defect() const { return max_abs_diff(m_, m_.adjoint()); }

double DensityMatrix::min_eigenvalue() const { return hermitian_eigen(hermitian_part(m_)).values.front(); }

// ---------------------------------------------------------------------------

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  return max_abs(a - b);
}

Operator kron(const Operator& a, const Operator& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  if (da * db > kMaxDim) throw std::invalid_argument("kron: result dimension exceeds 16");
  const auto n = static_cast<Eigen::Index>(da * db);
  Matrix m(n, n);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          m(static_cast<Eigen::Index>(i * db + k), static_cast<Eigen::Index>(j * db + l)) = a(i, j) * b(k, l);
  return Operator(std::move(m));
}

Operator kron(std::initializer_list<Operator> factors) {
  if (factors.size() == 0) throw std::invalid_argument("kron: no factors");
  auto it = factors.begin();
  Operator acc = *it++;
  for (; it != factors.end(); ++it) acc = kron(acc, *it);
  return acc;
}

Operator dagger(const Operator& a) { return Operator(a.matrix().adjoint()); }

DensityMatrix conjugate_by(const Operator& u, const DensityMatrix& rho) {
  if (u.dim() != rho.dim()) throw std::invalid_argument("conjugate_by: dimension mismatch");
  if (!u.is_unitary(1e-10)) throw std::invalid_argument("conjugate_by: operator is not unitary");
  Matrix out = u.matrix() * rho.matrix() * u.matrix().adjoint();
  if (rho.is_raw()) return DensityMatrix::raw(std::move(out));
  return DensityMatrix::physical(hermitian_part(out));
}

DensityMatrix partial_trace_last(const DensityMatrix& rho) {
  if (rho.qubits() < 2) throw std::invalid_argument("partial_trace_last: need at least two qubits");
  const Eigen::Index half = static_cast<Eigen::Index>(rho.dim() / 2);
  Matrix out = Matrix::Zero(half, half);
  for (Eigen::Index i = 0; i < half; ++i)
    for (Eigen::Index j = 0; j < half; ++j)
      out(i, j) = rho(static_cast<std::size_t>(2 * i), static_cast<std::size_t>(2 * j)) +
                  rho(static_cast<std::size_t>(2 * i + 1), static_cast<std::size_t>(2 * j + 1));
  if (rho.is_raw()) return DensityMatrix::raw(std::move(out));
  return DensityMatrix::physical(std::move(out));
}

EigenDecomposition hermitian_eigen(const Matrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
  if (max_abs_diff(input, input.adjoint()) > 1e-10) throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian");

  const Eigen::Index n = input.rows();
  Matrix a = hermitian_part(input);
  Matrix v = Matrix::Identity(n, n);
  const double threshold = kJacobiThreshold * std::max(1.0, a.norm());

  int sweep = 0;
  for (; sweep < kJacobiMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase-rotate column q so the pivot is real, then apply a real Givens rotation.
        const Complex phase = std::conj(apq) / mag;  // e^{-i phi}
        const double theta = 0.5 * std::atan2(2.0 * mag, a(q, q).real() - a(p, p).real());
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * phase;
        const Complex jqq = c * phase;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  if (off_diagonal_norm(a) > threshold) throw std::runtime_error("hermitian_eigen: Jacobi iteration did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out;
  out.values.reserve(order.size());
  out.vectors.resize(n, n);
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.values.push_back(a(order[i], order[i]).real());
    out.vectors.col(static_cast<Eigen::Index>(i)) = v.col(order[i]);
  }
  out.sweeps = sweep;
  return out;
}

SqrtResult herm_sqrt(const Operator& a) {
  if (!a.is_hermitian(1e-10)) throw std::invalid_argument("herm_sqrt: matrix is not Hermitian");
  const auto eig = hermitian_eigen(a.matrix());
  SqrtResult out;
  Eigen::VectorXd roots(static_cast<Eigen::Index>(eig.values.size()));
  double scale = 0.0;
  for (double v : eig.values) scale = std::max(scale, std::abs(v));
  // Numerical rank cutoff.
  const double noise = static_cast<double>(eig.values.size()) * std::numeric_limits<double>::epsilon() * scale;
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    double lambda = eig.values[i];
    if (std::abs(lambda) <= noise) lambda = 0.0;
    if (lambda < 0.0) {
      out.clamped = std::max(out.clamped, -lambda);
      if (lambda < -kPsdSlack) out.significant_negative = true;
      lambda = 0.0;
    }
    roots(static_cast<Eigen::Index>(i)) = std::sqrt(lambda);
  }
  const Matrix root = eig.vectors * roots.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  out.root = Operator(hermitian_part(root));
  return out;
}

bool equal_up_to_global_phase(const Operator& a, const Operator& b, double tol) {
  if (a.dim() != b.dim()) return false;
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  b.matrix().cwiseAbs().maxCoeff(&r, &c);
  const Complex bref = b.matrix()(r, c);
  const Complex aref = a.matrix()(r, c);
  if (std::abs(bref) == 0.0) return max_abs(a.matrix()) <= tol;
  if (std::abs(aref) == 0.0) return false;
  const Complex ratio = aref / bref;
  const Complex phase = ratio / std::abs(ratio);
  return max_abs_diff(a.matrix(), b.matrix() * phase) <= tol;
}

}  // namespace qdilemma
