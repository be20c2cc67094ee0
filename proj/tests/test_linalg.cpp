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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "qdilemma/game.hpp"
#include "qdilemma/linalg.hpp"
#include "test_support.hpp"

namespace qdilemma {
namespace {

using testing::random_hermitian;
using testing::random_mixed;
using testing::random_state;

Operator random_gate_product(std::mt19937_64& rng, int length) {
  const Operator pool[] = {
      kron({pauli_x(), pauli_i(), pauli_i()}), kron({hadamard(), pauli_i(), pauli_i()}),
      kron({pauli_i(), hadamard(), pauli_x()}), kron({pauli_i(), pauli_i(), rx(0.7)}),
      controlled_not(0, 2, 3), controlled_not(2, 1, 3), entangler(EntanglerParams()),
  };
  std::uniform_int_distribution<std::size_t> pick(0, std::size(pool) - 1);
  Operator u = Operator::identity(8);
  for (int i = 0; i < length; ++i) u = pool[pick(rng)] * u;
  return u;
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(max_abs_diff(kron(pauli_i(), pauli_i()).matrix(), Matrix::Identity(4, 4)), 0.0);
}

TEST(Kron, EntryLayout) {
  const Operator xx = kron(pauli_x(), pauli_x());
  EXPECT_EQ(xx(0, 3), Complex(1.0));
  EXPECT_EQ(xx(3, 0), Complex(1.0));
  EXPECT_EQ(xx(0, 0), Complex(0.0));

  // a (x) b at ((i*db + k), (j*db + l)) = a[i,j] b[k,l], checked on a non-symmetric pair.
  const Operator a = Operator::from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const Operator b = Operator::from_rows({{0.0, Complex(0, 1)}, {5.0, 6.0}});
  const Operator ab = kron(a, b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) EXPECT_EQ(ab(i * 2 + k, j * 2 + l), a(i, j) * b(k, l));
}

TEST(Kron, TripleFlipMapsZeroToSeven) {
  const Operator x3 = kron(kron(pauli_x(), pauli_x()), pauli_x());
  StateVector e0 = StateVector::Zero(8);
  e0(0) = 1.0;
  const StateVector out = x3.apply(e0);
  for (Eigen::Index k = 0; k < 8; ++k) EXPECT_EQ(out(k), Complex(k == 7 ? 1.0 : 0.0));
}

TEST(Kron, RejectsDimensionsAboveSixteen) {
  const Operator i16 = Operator::identity(16);
  EXPECT_THROW(kron(i16, pauli_i()), std::invalid_argument);
  EXPECT_THROW(kron({pauli_i(), pauli_i(), pauli_i(), pauli_i(), pauli_i()}), std::invalid_argument);
}

TEST(OperatorType, RejectsBadShapes) {
  EXPECT_THROW(Operator(Matrix::Identity(3, 3)), std::invalid_argument);
  EXPECT_THROW(Operator(Matrix::Identity(32, 32)), std::invalid_argument);
  EXPECT_THROW(Operator(Matrix::Identity(2, 4)), std::invalid_argument);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Operator{bad}, std::invalid_argument);
}

TEST(Dagger, Basics) {
  EXPECT_EQ(max_abs_diff(dagger(Operator::identity(4)).matrix(), Matrix::Identity(4, 4)), 0.0);
  EXPECT_LE(max_abs_diff(dagger(rx(-std::numbers::pi / 2)).matrix(), rx(std::numbers::pi / 2).matrix()), 1e-15);
  const Operator j = entangler(EntanglerParams());
  EXPECT_LE(max_abs_diff((dagger(j) * j).matrix(), Matrix::Identity(8, 8)), 1e-12);
}

TEST(ConjugateBy, Examples) {
  std::mt19937_64 rng(7);
  const DensityMatrix rho = DensityMatrix::physical(random_mixed(rng, 8, 3));
  EXPECT_LE(max_abs_diff(conjugate_by(Operator::identity(8), rho).matrix(), rho.matrix()), 1e-15);

  const DensityMatrix flipped = conjugate_by(kron({pauli_x(), pauli_x(), pauli_x()}), DensityMatrix::basis("000"));
  EXPECT_LE(max_abs_diff(flipped.matrix(), DensityMatrix::basis("111").matrix()), 0.0);

  // J|000> = (|000> + i|111>)/sqrt2, so the populations are 1/2 at 0 and 7.
  const DensityMatrix ent = conjugate_by(entangler(EntanglerParams()), DensityMatrix::basis("000"));
  for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(ent(k, k).real(), (k == 0 || k == 7) ? 0.5 : 0.0, 1e-15);
}

TEST(ConjugateBy, Errors) {
  EXPECT_THROW(conjugate_by(Operator::identity(4), DensityMatrix::basis("000")), std::invalid_argument);
  const Operator not_unitary(Matrix::Identity(8, 8) * 2.0);
  EXPECT_THROW(conjugate_by(not_unitary, DensityMatrix::basis("000")), std::invalid_argument);
}

TEST(ConjugateBy, PreservesSpectrumAndComposes) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = DensityMatrix::physical(random_mixed(rng, 8, 1 + trial % 4));
    const Operator u = random_gate_product(rng, 6);
    const Operator v = random_gate_product(rng, 6);
    const DensityMatrix out = conjugate_by(u, rho);

    EXPECT_LE(out.hermiticity_defect(), 1e-12);
    EXPECT_NEAR(out.trace().real(), 1.0, 1e-12);
    const auto before = hermitian_eigen(rho.matrix()).values;
    const auto after = hermitian_eigen(out.matrix()).values;
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(before[i], after[i], 1e-10);

    const DensityMatrix nested = conjugate_by(u, conjugate_by(v, rho));
    const DensityMatrix direct = conjugate_by(u * v, rho);
    EXPECT_LE(max_abs_diff(nested.matrix(), direct.matrix()), 1e-10);
  }
}

TEST(PartialTrace, ProductState) {
  const DensityMatrix out = partial_trace_last(DensityMatrix::basis("0000"));
  EXPECT_EQ(out.qubits(), 3u);
  EXPECT_EQ(max_abs_diff(out.matrix(), DensityMatrix::basis("000").matrix()), 0.0);
}

TEST(PartialTrace, CatStateMatchesIndexSummation) {
  for (double x : {0.0, 0.1, 0.3, 0.5, 0.77, 1.0}) {
    testing::Amplitudes psi(16, 0.0);
    psi[0] = std::sqrt(1.0 - x);
    psi[15] = std::sqrt(x);
    StateVector v(16);
    for (std::size_t i = 0; i < 16; ++i) v(static_cast<Eigen::Index>(i)) = psi[i];
    const DensityMatrix reduced = partial_trace_last(DensityMatrix::physical(v * v.adjoint()));
    const Matrix oracle = testing::reduce_last(psi);
    EXPECT_LE(max_abs_diff(reduced.matrix(), oracle), 1e-15);
    EXPECT_NEAR(reduced(0, 0).real(), 1.0 - x, 1e-15);
    EXPECT_NEAR(reduced(7, 7).real(), x, 1e-15);
  }
}

TEST(PartialTrace, PreservesTraceAndUndoesAncillaExtension) {
  std::mt19937_64 rng(3);
  const DensityMatrix zero = DensityMatrix::basis("0");
  for (int trial = 0; trial < 30; ++trial) {
    const DensityMatrix rho = DensityMatrix::physical(random_mixed(rng, 8, 1 + trial % 5));
    const DensityMatrix extended = DensityMatrix::physical(kron(Operator(rho.matrix()), Operator(zero.matrix())).matrix());
    const DensityMatrix back = partial_trace_last(extended);
    EXPECT_LE(max_abs_diff(back.matrix(), rho.matrix()), 1e-15);

    const Eigen::VectorXcd psi = random_state(rng, 16);
    const DensityMatrix reduced = partial_trace_last(DensityMatrix::pure(psi));
    EXPECT_NEAR(reduced.trace().real(), 1.0, 1e-12);
  }
}

TEST(PartialTrace, RejectsSingleQubit) {
  EXPECT_THROW(partial_trace_last(DensityMatrix::basis("1")), std::invalid_argument);
}

TEST(DensityMatrixType, ValidatesPhysicalInvariants) {
  Matrix m = Matrix::Zero(8, 8);
  m(0, 0) = 0.5;
  EXPECT_THROW(DensityMatrix::physical(m), std::invalid_argument);  // trace
  m(0, 0) = 1.0;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix::physical(m), std::invalid_argument);  // Hermitian
  m(0, 1) = 0.0;
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix::physical(m), std::invalid_argument);  // PSD
  EXPECT_NO_THROW(DensityMatrix::raw(m));
  EXPECT_LT(DensityMatrix::raw(m).min_eigenvalue(), -0.4);
}

TEST(HermitianEigen, AgreesWithEigenSolver) {
  std::mt19937_64 rng(19);
  for (Eigen::Index dim : {2, 4, 8, 16}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Matrix a = random_hermitian(rng, dim);
      const auto ours = hermitian_eigen(a);
      Eigen::SelfAdjointEigenSolver<Matrix> reference(a);
      for (Eigen::Index i = 0; i < dim; ++i) EXPECT_NEAR(ours.values[static_cast<std::size_t>(i)], reference.eigenvalues()(i), 1e-11);
      const Matrix rebuilt =
          ours.vectors * Eigen::VectorXd::Map(ours.values.data(), dim).cast<Complex>().asDiagonal() * ours.vectors.adjoint();
      EXPECT_LE(max_abs_diff(rebuilt, a), 1e-11);
      EXPECT_LE(max_abs_diff(ours.vectors.adjoint() * ours.vectors, Matrix::Identity(dim, dim)), 1e-12);
    }
  }
}

TEST(HermitianEigen, DegenerateSpectrum) {
  const auto eig = hermitian_eigen(Matrix::Identity(8, 8));
  EXPECT_EQ(eig.sweeps, 0);
  for (double v : eig.values) EXPECT_EQ(v, 1.0);
}

TEST(HermSqrt, Examples) {
  EXPECT_LE(max_abs_diff(herm_sqrt(Operator::identity(8)).root.matrix(), Matrix::Identity(8, 8)), 1e-15);

  const Operator d = Operator::from_rows({{4.0, 0.0}, {0.0, 9.0}});
  EXPECT_LE(max_abs_diff(herm_sqrt(d).root.matrix(), Operator::from_rows({{2.0, 0.0}, {0.0, 3.0}}).matrix()), 1e-15);

  const Matrix proj = DensityMatrix::basis("101").matrix();
  EXPECT_LE(max_abs_diff(herm_sqrt(Operator(proj)).root.matrix(), proj), 1e-15);
}

TEST(HermSqrt, SquareReproducesClampedInput) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix a = random_hermitian(rng, 8);
    const SqrtResult s = herm_sqrt(Operator(a));
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const Eigen::VectorXd clamped = es.eigenvalues().cwiseMax(0.0);
    const Matrix target = es.eigenvectors() * clamped.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    EXPECT_LE(max_abs_diff(s.root.matrix() * s.root.matrix(), target), 1e-8);
    EXPECT_TRUE(s.root.is_hermitian(1e-12));
    EXPECT_GE(hermitian_eigen(s.root.matrix()).values.front(), -1e-10);
    EXPECT_EQ(s.significant_negative, es.eigenvalues()(0) < -kPsdSlack);
  }
}

TEST(HermSqrt, ClampingReport) {
  const SqrtResult tiny = herm_sqrt(Operator::from_rows({{1.0, 0.0}, {0.0, -1e-12}}));
  EXPECT_FALSE(tiny.significant_negative);
  EXPECT_NEAR(tiny.clamped, 1e-12, 1e-20);
  const SqrtResult big = herm_sqrt(Operator::from_rows({{1.0, 0.0}, {0.0, -0.25}}));
  EXPECT_TRUE(big.significant_negative);
  EXPECT_NEAR(big.clamped, 0.25, 1e-15);
  EXPECT_THROW(herm_sqrt(Operator::from_rows({{1.0, 0.5}, {0.0, 1.0}})), std::invalid_argument);
}

TEST(GlobalPhase, Comparison) {
  const Operator h = hadamard();
  EXPECT_TRUE(equal_up_to_global_phase(h, h.scaled(std::polar(1.0, 0.3))));
  EXPECT_TRUE(equal_up_to_global_phase(h.scaled(-1.0), h));
  EXPECT_FALSE(equal_up_to_global_phase(h, pauli_x()));
  EXPECT_FALSE(equal_up_to_global_phase(h, h.scaled(2.0)));
}

}  // namespace
}  // namespace qdilemma
