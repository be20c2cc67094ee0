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

#include "qdilemma/game.hpp"

#include <cmath>
#include <stdexcept>

namespace qdilemma {

namespace {

using namespace std::complex_literals;

constexpr double kProbabilityClamp = 1e-12;

}  // namespace

Operator pauli_i() { return Operator::identity(2); }
Operator pauli_x() { return Operator::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
Operator pauli_y() { return Operator::from_rows({{0.0, -1i}, {1i, 0.0}}); }
Operator pauli_z() { return Operator::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

Operator hadamard() {
  const double h = 1.0 / std::numbers::sqrt2;
  return Operator::from_rows({{h, h}, {h, -h}});
}

Operator rx(double phi) {
  const double c = std::cos(phi / 2);
  const double s = std::sin(phi / 2);
  return Operator::from_rows({{c, -1i * s}, {-1i * s, c}});
}

Operator u3(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return Operator::from_rows({{c, -std::polar(1.0, lambda) * s}, {std::polar(1.0, phi) * s, std::polar(1.0, lambda + phi) * c}});
}

Operator embed(const Operator& single, std::size_t target, std::size_t qubits) {
  if (single.dim() != 2) throw std::invalid_argument("embed: expected a single-qubit operator");
  if (target >= qubits) throw std::invalid_argument("embed: target out of range");
  Operator acc = target == 0 ? single : pauli_i();
  for (std::size_t k = 1; k < qubits; ++k) acc = kron(acc, k == target ? single : pauli_i());
  return acc;
}

Operator controlled_not(std::size_t control, std::size_t target, std::size_t qubits) {
  if (control >= qubits || target >= qubits || control == target || qubits > 4) {
    throw std::invalid_argument("controlled_not: invalid qubit indices");
  }
  const std::size_t dim = std::size_t{1} << qubits;
  const std::size_t cmask = std::size_t{1} << (qubits - 1 - control);
  const std::size_t tmask = std::size_t{1} << (qubits - 1 - target);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t b = 0; b < dim; ++b) {
    const std::size_t out = (b & cmask) ? (b ^ tmask) : b;
    m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(b)) = 1.0;
  }
  return Operator(std::move(m));
}

EntanglerParams::EntanglerParams(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma <= std::numbers::pi / 2 + 1e-15)) {
    throw std::invalid_argument("EntanglerParams: gamma must lie in [0, pi/2]");
  }
}

Strategy Strategy::from_letter(char c) {
  switch (c) {
    case 'I': return identity();
    case 'H': return hadamard();
    case 'X': return flip();
    default: throw std::invalid_argument(std::string("unknown strategy letter '") + c + "', expected I, H or X");
  }
}

char Strategy::letter() const {
  switch (kind) {
    case Kind::Identity: return 'I';
    case Kind::Hadamard: return 'H';
    case Kind::Flip: return 'X';
    case Kind::General: return 'U';
  }
  return '?';
}

StrategyProfile parse_profile(std::string_view text) {
  if (text.size() != 3) {
    throw std::invalid_argument("profile must be exactly three letters from {I,H,X}, got '" + std::string(text) + "'");
  }
  return {Strategy::from_letter(text[0]), Strategy::from_letter(text[1]), Strategy::from_letter(text[2])};
}

std::string profile_string(const StrategyProfile& profile) {
  return {profile[0].letter(), profile[1].letter(), profile[2].letter()};
}

PayoffTable::PayoffTable(double p, double q, double n) : p_(p), q_(q), n_(n) {
  if (!(std::isfinite(p) && std::isfinite(q) && std::isfinite(n) && 0.0 < p && p < q && q < n)) {
    throw std::invalid_argument("payoff table requires 0 < p < q < n");
  }
}

std::array<double, 3> PayoffTable::row(std::size_t outcome) const {
  switch (outcome) {
    case 0: return {0.0, 0.0, 0.0};
    case 1: return {-n_, -n_, p_};
    case 2: return {-n_, p_, -n_};
    case 3: return {p_, n_, n_};
    case 4: return {p_, -n_, -n_};
    case 5: return {n_, p_, n_};
    case 6: return {n_, n_, p_};
    case 7: return {q_, q_, q_};
    default: throw std::out_of_range("PayoffTable::row: outcome must be in 0..7");
  }
}

OutcomeDistribution::OutcomeDistribution(std::array<double, 8> probs) : probs_(probs) {
  double sum = 0.0;
  for (double v : probs_) {
    if (!(v >= 0.0)) throw std::invalid_argument("OutcomeDistribution: negative or non-finite probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw std::invalid_argument("OutcomeDistribution: probabilities do not sum to 1");
}

OutcomeDistribution OutcomeDistribution::delta(std::size_t outcome) {
  if (outcome >= 8) throw std::out_of_range("OutcomeDistribution::delta: outcome must be in 0..7");
  std::array<double, 8> p{};
  p[outcome] = 1.0;
  return OutcomeDistribution(p);
}

Operator entangler(const EntanglerParams& params) {
  const double c = std::cos(params.gamma() / 2);
  const double s = std::sin(params.gamma() / 2);
  const Operator x3 = kron({pauli_x(), pauli_x(), pauli_x()});
  return Operator::identity(8).scaled(c) + x3.scaled(1i * s);
}

Operator disentangler(const EntanglerParams& params) { return dagger(entangler(params)); }

Operator strategy_unitary(const Strategy& s) {
  switch (s.kind) {
    case Strategy::Kind::Identity: return pauli_i();
    case Strategy::Kind::Hadamard: return hadamard();
    case Strategy::Kind::Flip: return pauli_x();
    case Strategy::Kind::General: return u3(s.theta, s.phi, s.lambda);
  }
  throw std::logic_error("strategy_unitary: unknown kind");
}

Operator game_unitary(const StrategyProfile& profile, const EntanglerParams& params) {
  const Operator local = kron({strategy_unitary(profile[0]), strategy_unitary(profile[1]), strategy_unitary(profile[2])});
  return disentangler(params) * local * entangler(params);
}

OutcomeDistribution play(const StrategyProfile& profile, const DensityMatrix& input, const EntanglerParams& params) {
  if (input.qubits() != 3) throw std::invalid_argument("play: input must be a 3-qubit density matrix");
  if (std::abs(input.trace() - Complex(1.0)) > 1e-10) throw std::invalid_argument("play: input is not normalized");

  const Matrix u = game_unitary(profile, params).matrix();
  const Matrix out = u * input.matrix() * u.adjoint();

  std::array<double, 8> probs{};
  double sum = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    double v = out(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real();
    if (v < 0.0) {
      if (v < -kProbabilityClamp) throw std::runtime_error("play: negative outcome probability");
      v = 0.0;
    }
    probs[k] = v;
    sum += v;
  }
  for (double& v : probs) v /= sum;
  return OutcomeDistribution(probs);
}

PayoffVector payoff(const OutcomeDistribution& dist, const PayoffTable& table) {
  std::array<double, 3> acc{};
  for (std::size_t k = 0; k < 8; ++k) {
    const auto row = table.row(k);
    for (std::size_t i = 0; i < 3; ++i) acc[i] += dist[k] * row[i];
  }
  return {acc[0], acc[1], acc[2], (acc[0] + acc[1] + acc[2]) / 3.0};
}

std::vector<GateDescriptor> decompose_entangler() {
  const double angle = -std::numbers::pi / 2;
  return {
      {"CNOT", {1, 0}, std::nullopt, controlled_not(1, 0, 3)},
      {"CNOT", {1, 2}, std::nullopt, controlled_not(1, 2, 3)},
      {"RX", {1}, angle, embed(rx(angle), 1, 3)},
      {"CNOT", {1, 0}, std::nullopt, controlled_not(1, 0, 3)},
      {"CNOT", {1, 2}, std::nullopt, controlled_not(1, 2, 3)},
  };
}

Operator circuit_product(const std::vector<GateDescriptor>& gates) {
  if (gates.empty()) throw std::invalid_argument("circuit_product: empty circuit");
  Operator acc = Operator::identity(gates.front().matrix.dim());
  for (const auto& g : gates) acc = g.matrix * acc;
  return acc;
}

}  // namespace qdilemma
