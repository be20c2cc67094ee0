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

#include "qdilemma/linalg.hpp"

namespace qdilemma {

/// Source that emits |111> instead of |000> with probability x.
class CorruptionModel {
 public:
  explicit CorruptionModel(double x);
  double x() const { return x_; }

 private:
  double x_;
};

/// (1 - x)|000><000| + x|111><111|
DensityMatrix corrupted_input(const CorruptionModel& model);

/// Ancilla rotation angle with x = sin^2(theta / 2).
double theta_for_x(double x);

/// Prepares the corrupted source with a circuit: U(theta, 0, 0) on an ancilla
/// appended as qubit 3, CNOTs from the ancilla to qubits 0, 1 and 2, then the
/// ancilla is traced out.
DensityMatrix ancilla_prepare(double x);

/// The pure 4-qubit state before the ancilla is discarded.
StateVector ancilla_statevector(double x);

}  // namespace qdilemma
