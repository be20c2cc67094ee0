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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qdilemma/game.hpp"

namespace qdilemma {

/// Profiles sharing one unordered bag of strategies from {I, H, X}.
struct StrategyClass {
  std::string label;     // Roman numeral I..X, empty until labeled
  std::string multiset;  // canonical letters, ordered I < H < X, e.g. "IXX"
  std::vector<StrategyProfile> configurations;

  std::size_t size() const { return configurations.size(); }
};

/// Reference mean payoff of each class at x = 0 for the (1, 2, 9) table.
struct ClassReference {
  std::string_view label;
  double mean_payoff;
  std::size_t size;
};
const std::vector<ClassReference>& class_references();
inline constexpr double kClassPayoffTol = 5e-3;

std::string canonical_multiset(const StrategyProfile& profile);

/// All 27 profiles grouped into the 10 classes, unlabeled, ordered by multiset.
std::vector<StrategyClass> enumerate_classes();

/// Mean payoff averaged over every configuration of the class.
double class_mean_payoff(const StrategyClass& cls, const PayoffTable& table, double x,
                         const EntanglerParams& params = EntanglerParams());

/// Assigns labels I..X by simulating every multiset against `table` at x = 0.
///
/// IV, V, VII and VIII are anchored to fixed multisets; the remaining classes
/// are matched by mean payoff and class size. III and X share a payoff and a
/// size: the multiset with two flips is III, the one with two identities is X.
/// Throws std::runtime_error when no consistent assignment exists.
std::map<std::string, std::string> label_classes(const PayoffTable& table);

/// enumerate_classes() labeled against the standard table, ordered I..X.
std::vector<StrategyClass> labeled_classes();

/// Mean payoff of the quantum Nash equilibrium: (-4nx + 2n + p) / 3.
double quantum_ne_payoff(const PayoffTable& table, double x);
/// Mean payoff of the classical Nash equilibrium (q, q, q): q(1 - x).
double classical_ne_payoff(const PayoffTable& table, double x);

/// Crossing of the two equilibrium lines, (2n + p - 3q) / (4n - 3q).
/// nullopt when the numerator is not positive: the quantum strategy is never ahead.
std::optional<double> critical_corruption(const PayoffTable& table);

enum class Dominant { Quantum, Classical, Tie };
std::string_view to_string(Dominant d);
inline constexpr double kDominanceTol = 1e-12;

struct EquilibriumReport {
  double x = 0.0;
  double quantum_ne_mean = 0.0;
  double classical_ne_mean = 0.0;
  Dominant dominant = Dominant::Tie;
};

EquilibriumReport dominance(const PayoffTable& table, double x);

enum class SweptParameter { X, N, Q };
std::string_view to_string(SweptParameter s);
SweptParameter parse_swept(std::string_view s);

/// Fixed parameters of a sweep; the swept one is overridden per grid point.
struct SweepTemplate {
  double p = 1.0;
  double q = 2.0;
  double n = 9.0;
  double x = 0.0;
  double gamma = std::numbers::pi / 2;
};

struct SweepRecord {
  SweptParameter swept = SweptParameter::X;
  double value = 0.0;
  double p = 0.0;
  double q = 0.0;
  double n = 0.0;
  double x = 0.0;
  bool valid = false;
  std::string error;
  double quantum_ne = 0.0;
  double classical_ne = 0.0;
  std::optional<double> x_c;
  Dominant dominant = Dominant::Tie;
  // x sweeps only: simulated Class VIII and all-flip mean payoffs.
  std::optional<double> simulated_quantum_ne;
  std::optional<double> simulated_classical_ne;
};

/// `points` evenly spaced values from lo to hi inclusive.
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

/// One record per grid point, in grid order. Points that break 0 < p < q < n
/// (or x outside [0, 1]) come back with valid = false and an error message.
/// threads = 0 picks the hardware concurrency.
std::vector<SweepRecord> sweep(const SweepTemplate& base, SweptParameter swept, std::span<const double> grid,
                               unsigned threads = 0);

}  // namespace qdilemma
