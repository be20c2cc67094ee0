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

#include "qdilemma/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qdilemma/game.hpp"

namespace qdilemma {

namespace {

void require_probability(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string(what) + ": x must lie in [0, 1]");
}

}  // namespace

CorruptionModel::CorruptionModel(double x) : x_(x) { require_probability(x, "CorruptionModel"); }

DensityMatrix corrupted_input(const CorruptionModel& model) {
  Matrix m = Matrix::Zero(8, 8);
  m(0, 0) = 1.0 - model.x();
  m(7, 7) = model.x();
  return DensityMatrix::physical(std::move(m));
}

double theta_for_x(double x) {
  require_probability(x, "theta_for_x");
  return 2.0 * std::asin(std::sqrt(x));
}

StateVector ancilla_statevector(double x) {
  constexpr std::size_t kQubits = 4;
  constexpr std::size_t kAncilla = 3;
  StateVector psi = StateVector::Zero(16);
  psi(0) = 1.0;
  psi = embed(u3(theta_for_x(x), 0.0, 0.0), kAncilla, kQubits).apply(psi);
  for (std::size_t target = 0; target < 3; ++target) psi = controlled_not(kAncilla, target, kQubits).apply(psi);
  return psi;
}

DensityMatrix ancilla_prepare(double x) {
  const StateVector psi = ancilla_statevector(x);
  return partial_trace_last(DensityMatrix::physical(psi * psi.adjoint()));
}

}  // namespace qdilemma
