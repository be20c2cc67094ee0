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

#include <array>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qdilemma/linalg.hpp"

namespace qdilemma {

// Single-qubit gates.
Operator pauli_i();
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator hadamard();
/// R_x(phi) = cos(phi/2) I - i sin(phi/2) X, so R_x(-pi/2)|0> = (|0> + i|1>)/sqrt2.
Operator rx(double phi);
/// General single-qubit unitary
///   [[cos(t/2), -e^{i lambda} sin(t/2)], [e^{i phi} sin(t/2), e^{i(lambda+phi)} cos(t/2)]].
Operator u3(double theta, double phi, double lambda);

/// `single` placed on `target` of an n-qubit register, identity elsewhere.
Operator embed(const Operator& single, std::size_t target, std::size_t qubits);
/// CNOT on an n-qubit register (qubit 0 is the most significant bit).
Operator controlled_not(std::size_t control, std::size_t target, std::size_t qubits);

/// Entangling strength gamma in [0, pi/2]; pi/2 is maximal correlation.
class EntanglerParams {
 public:
  EntanglerParams() = default;
  explicit EntanglerParams(double gamma);
  double gamma() const { return gamma_; }

 private:
  double gamma_ = std::numbers::pi / 2;
};

struct Strategy {
  enum class Kind { Identity, Hadamard, Flip, General };

  Kind kind = Kind::Identity;
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  static Strategy identity() { return {Kind::Identity}; }
  static Strategy hadamard() { return {Kind::Hadamard}; }
  static Strategy flip() { return {Kind::Flip}; }
  static Strategy general(double theta, double phi, double lambda) { return {Kind::General, theta, phi, lambda}; }

  /// 'I', 'H' or 'X'; throws std::invalid_argument otherwise.
  static Strategy from_letter(char c);
  /// 'I', 'H', 'X', or 'U' for General.
  char letter() const;

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Player i acts on qubit i.
using StrategyProfile = std::array<Strategy, 3>;

/// Parses "XIX"-style strings, leftmost letter = player 1.
StrategyProfile parse_profile(std::string_view text);
std::string profile_string(const StrategyProfile& profile);

/// Payoff parameters with 0 < p < q < n.
class PayoffTable {
 public:
  PayoffTable(double p, double q, double n);
  /// The (1, 2, 9) table used throughout the literature for this game.
  static PayoffTable standard() { return PayoffTable(1.0, 2.0, 9.0); }

  double p() const { return p_; }
  double q() const { return q_; }
  double n() const { return n_; }

  /// Payoffs of the three players for measured outcome 0..7.
  std::array<double, 3> row(std::size_t outcome) const;

 private:
  double p_;
  double q_;
  double n_;
};

class OutcomeDistribution {
 public:
  /// Throws unless all entries are >= 0 and sum to 1 within 1e-10.
  explicit OutcomeDistribution(std::array<double, 8> probs);
  static OutcomeDistribution delta(std::size_t outcome);

  const std::array<double, 8>& probs() const { return probs_; }
  double operator[](std::size_t k) const { return probs_[k]; }

 private:
  std::array<double, 8> probs_;
};

struct PayoffVector {
  double player1 = 0.0;
  double player2 = 0.0;
  double player3 = 0.0;
  double mean = 0.0;
};

Operator entangler(const EntanglerParams& params);
Operator disentangler(const EntanglerParams& params);
Operator strategy_unitary(const Strategy& s);
/// J^dagger (S1 x S2 x S3) J
Operator game_unitary(const StrategyProfile& profile, const EntanglerParams& params);

/// Outcome probabilities of measuring J^dagger S J rho J^dagger S^dagger J in the
/// computational basis. Rounding negatives above -1e-12 are clamped.
OutcomeDistribution play(const StrategyProfile& profile, const DensityMatrix& input,
                         const EntanglerParams& params = EntanglerParams());

PayoffVector payoff(const OutcomeDistribution& dist, const PayoffTable& table);

struct GateDescriptor {
  std::string name;                // "CNOT" or "RX"
  std::vector<std::size_t> qubits;  // CNOT: {control, target}
  std::optional<double> angle;
  Operator matrix;                 // full 8x8 operator
};

/// Hardware-friendly circuit for the maximally entangling J: four CNOTs and an
/// R_x(-pi/2), listed in application order.
std::vector<GateDescriptor> decompose_entangler();
/// Product of the gates, last gate leftmost.
Operator circuit_product(const std::vector<GateDescriptor>& gates);

}  // namespace qdilemma
