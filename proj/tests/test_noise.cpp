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

#include "qdilemma/analysis.hpp"
#include "qdilemma/game.hpp"
#include "qdilemma/noise.hpp"
#include "test_support.hpp"

namespace qdilemma {
namespace {

Matrix diag_ends(double x) {
  Matrix m = Matrix::Zero(8, 8);
  m(0, 0) = 1.0 - x;
  m(7, 7) = x;
  return m;
}

TEST(CorruptedInput, Examples) {
  EXPECT_EQ(max_abs_diff(corrupted_input(CorruptionModel(0.0)).matrix(), DensityMatrix::basis("000").matrix()), 0.0);
  EXPECT_EQ(max_abs_diff(corrupted_input(CorruptionModel(1.0)).matrix(), DensityMatrix::basis("111").matrix()), 0.0);
  EXPECT_EQ(max_abs_diff(corrupted_input(CorruptionModel(0.25)).matrix(), diag_ends(0.25)), 0.0);
}

TEST(CorruptedInput, RejectsOutOfRange) {
  EXPECT_THROW(CorruptionModel(-0.01), std::invalid_argument);
  EXPECT_THROW(CorruptionModel(1.01), std::invalid_argument);
  EXPECT_THROW(CorruptionModel(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

TEST(CorruptedInput, AlwaysPhysical) {
  for (const double x : uniform_grid(0.0, 1.0, 101)) {
    const DensityMatrix rho = corrupted_input(CorruptionModel(x));
    EXPECT_FALSE(rho.is_raw());
    EXPECT_LE(rho.hermiticity_defect(), 1e-12);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_GE(rho.min_eigenvalue(), -1e-10);
  }
}

TEST(ThetaForX, Examples) {
  EXPECT_EQ(theta_for_x(0.0), 0.0);
  EXPECT_NEAR(theta_for_x(1.0), std::numbers::pi, 1e-15);
  EXPECT_NEAR(theta_for_x(0.5), std::numbers::pi / 2, 1e-15);
  EXPECT_THROW(theta_for_x(1.5), std::invalid_argument);
  EXPECT_THROW(theta_for_x(-0.5), std::invalid_argument);
  for (const double x : uniform_grid(0.0, 1.0, 11)) {
    const double s = std::sin(theta_for_x(x) / 2);
    EXPECT_NEAR(s * s, x, 1e-15);
  }
}

TEST(AncillaPrepare, Examples) {
  EXPECT_LE(max_abs_diff(ancilla_prepare(0.0).matrix(), DensityMatrix::basis("000").matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(ancilla_prepare(1.0).matrix(), DensityMatrix::basis("111").matrix()), 1e-15);
  EXPECT_LE(max_abs_diff(ancilla_prepare(0.3).matrix(), diag_ends(0.3)), 1e-12);
}

TEST(AncillaPrepare, StatevectorMatchesOracle) {
  for (const double x : {0.0, 0.3, 0.5, 0.9, 1.0}) {
    // Oracle: ancilla amplitude by hand, CNOT fan-out by bit arithmetic.
    testing::Amplitudes a = testing::basis_amplitudes(4, 0);
    const double t = 2 * std::asin(std::sqrt(x));
    testing::apply_single(a, 4, 3, {{{std::cos(t / 2), -std::sin(t / 2)}, {std::sin(t / 2), std::cos(t / 2)}}});
    for (std::size_t q = 0; q < 3; ++q) testing::apply_cnot(a, 4, 3, q);

    const StateVector psi = ancilla_statevector(x);
    for (std::size_t k = 0; k < 16; ++k) EXPECT_NEAR(std::abs(psi(static_cast<Eigen::Index>(k)) - a[k]), 0.0, 1e-15);
    EXPECT_LE(max_abs_diff(ancilla_prepare(x).matrix(), testing::reduce_last(a)), 1e-15);
  }
}

TEST(AncillaPrepare, EqualsDirectModelOnGrid) {
  for (const double x : uniform_grid(0.0, 1.0, 101)) {
    EXPECT_LE(max_abs_diff(ancilla_prepare(x).matrix(), corrupted_input(CorruptionModel(x)).matrix()), 1e-12) << x;
  }
}

TEST(CorruptedInput, AllFlipPayoffIsClassicalLine) {
  const PayoffTable t = PayoffTable::standard();
  for (const double x : uniform_grid(0.0, 1.0, 21)) {
    const double mean = payoff(play(parse_profile("XXX"), corrupted_input(CorruptionModel(x))), t).mean;
    EXPECT_NEAR(mean, t.q() * (1 - x), 1e-12);
  }
}

}  // namespace
}  // namespace qdilemma
