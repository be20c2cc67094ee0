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

#include "qdilemma/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

#include "qdilemma/noise.hpp"

namespace qdilemma {

namespace {

int letter_rank(char c) {
  switch (c) {
    case 'I': return 0;
    case 'H': return 1;
    case 'X': return 2;
    default: throw std::invalid_argument("class enumeration only covers I, H and X");
  }
}

// Fixed by the strategy content of the classes rather than by payoff.
const std::map<std::string, std::string>& anchored_labels() {
  static const std::map<std::string, std::string> anchors = {
      {"XXX", "IV"},
      {"III", "V"},
      {"IXX", "VII"},
      {"IHX", "VIII"},
  };
  return anchors;
}

const std::map<std::string, std::string>& tie_break_labels() {
  static const std::map<std::string, std::string> ties = {
      {"HXX", "III"},
      {"IIH", "X"},
  };
  return ties;
}

const ClassReference& reference_for(std::string_view label) {
  for (const auto& ref : class_references())
    if (ref.label == label) return ref;
  throw std::logic_error("unknown class label");
}

void require_x(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("corruption x must lie in [0, 1]");
}

SweepRecord evaluate_point(const SweepTemplate& base, SweptParameter swept, double value) {
  SweepRecord rec;
  rec.swept = swept;
  rec.value = value;
  rec.p = base.p;
  rec.q = base.q;
  rec.n = base.n;
  rec.x = base.x;
  switch (swept) {
    case SweptParameter::X: rec.x = value; break;
    case SweptParameter::N: rec.n = value; break;
    case SweptParameter::Q: rec.q = value; break;
  }
  try {
    require_x(rec.x);
    const PayoffTable table(rec.p, rec.q, rec.n);
    rec.quantum_ne = quantum_ne_payoff(table, rec.x);
    rec.classical_ne = classical_ne_payoff(table, rec.x);
    rec.x_c = critical_corruption(table);
    rec.dominant = dominance(table, rec.x).dominant;
    if (swept == SweptParameter::X) {
      const EntanglerParams params(base.gamma);
      const DensityMatrix input = corrupted_input(CorruptionModel(rec.x));
      rec.simulated_quantum_ne = payoff(play(parse_profile("IHX"), input, params), table).mean;
      rec.simulated_classical_ne = payoff(play(parse_profile("XXX"), input, params), table).mean;
    }
    rec.valid = true;
  } catch (const std::invalid_argument& e) {
    rec.valid = false;
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

const std::vector<ClassReference>& class_references() {
  static const std::vector<ClassReference> refs = {
      {"I", -3.75, 1},  {"II", -3.75, 3}, {"III", -1.833, 3}, {"IV", 2.0, 1},   {"V", 0.0, 1},
      {"VI", -5.67, 3}, {"VII", 6.33, 3}, {"VIII", 6.33, 6},  {"IX", 4.75, 3}, {"X", -1.833, 3},
  };
  return refs;
}

std::string canonical_multiset(const StrategyProfile& profile) {
  std::string s = profile_string(profile);
  std::sort(s.begin(), s.end(), [](char a, char b) { return letter_rank(a) < letter_rank(b); });
  return s;
}

std::vector<StrategyClass> enumerate_classes() {
  static constexpr char kLetters[] = {'I', 'H', 'X'};
  std::map<std::string, StrategyClass, std::less<>> by_multiset;
  for (char a : kLetters) {
    for (char b : kLetters) {
      for (char c : kLetters) {
        const StrategyProfile profile{Strategy::from_letter(a), Strategy::from_letter(b), Strategy::from_letter(c)};
        auto& cls = by_multiset[canonical_multiset(profile)];
        cls.multiset = canonical_multiset(profile);
        cls.configurations.push_back(profile);
      }
    }
  }
  std::vector<StrategyClass> out;
  out.reserve(by_multiset.size());
  for (auto& [key, cls] : by_multiset) out.push_back(std::move(cls));
  std::sort(out.begin(), out.end(), [](const StrategyClass& a, const StrategyClass& b) {
    return std::lexicographical_compare(a.multiset.begin(), a.multiset.end(), b.multiset.begin(), b.multiset.end(),
                                        [](char x, char y) { return letter_rank(x) < letter_rank(y); });
  });
  return out;
}

double class_mean_payoff(const StrategyClass& cls, const PayoffTable& table, double x, const EntanglerParams& params) {
  if (cls.configurations.empty()) throw std::invalid_argument("class_mean_payoff: empty class");
  const DensityMatrix input = corrupted_input(CorruptionModel(x));
  double sum = 0.0;
  for (const auto& profile : cls.configurations) sum += payoff(play(profile, input, params), table).mean;
  return sum / static_cast<double>(cls.configurations.size());
}

std::map<std::string, std::string> label_classes(const PayoffTable& table) {
  std::map<std::string, std::string> labels;
  std::set<std::string> used;

  for (const auto& cls : enumerate_classes()) {
    const double simulated = class_mean_payoff(cls, table, 0.0);

    if (auto it = anchored_labels().find(cls.multiset); it != anchored_labels().end()) {
      const auto& ref = reference_for(it->second);
      if (std::abs(simulated - ref.mean_payoff) > kClassPayoffTol || ref.size != cls.size()) {
        throw std::runtime_error("label_classes: anchored class " + it->second + " does not reproduce its payoff");
      }
      labels[cls.multiset] = it->second;
      continue;
    }

    std::vector<std::string> candidates;
    for (const auto& ref : class_references()) {
      if (anchored_labels().end() != std::find_if(anchored_labels().begin(), anchored_labels().end(),
                                                  [&](const auto& kv) { return kv.second == ref.label; })) {
        continue;
      }
      if (std::abs(simulated - ref.mean_payoff) <= kClassPayoffTol && ref.size == cls.size()) {
        candidates.emplace_back(ref.label);
      }
    }

    std::string chosen;
    if (candidates.size() == 1) {
      chosen = candidates.front();
    } else if (auto tie = tie_break_labels().find(cls.multiset);
               candidates.size() > 1 && tie != tie_break_labels().end() &&
               std::find(candidates.begin(), candidates.end(), tie->second) != candidates.end()) {
      chosen = tie->second;
    } else {
      throw std::runtime_error("label_classes: no consistent label for multiset " + cls.multiset);
    }
    labels[cls.multiset] = chosen;
  }

  for (const auto& [multiset, label] : labels) {
    if (!used.insert(label).second) throw std::runtime_error("label_classes: label " + label + " assigned twice");
  }
  if (used.size() != class_references().size()) throw std::runtime_error("label_classes: not every label assigned");
  return labels;
}

std::vector<StrategyClass> labeled_classes() {
  const auto labels = label_classes(PayoffTable::standard());
  auto classes = enumerate_classes();
  for (auto& cls : classes) cls.label = labels.at(cls.multiset);
  const auto& refs = class_references();
  auto position = [&](const std::string& label) {
    return std::find_if(refs.begin(), refs.end(), [&](const ClassReference& r) { return r.label == label; }) -
           refs.begin();
  };
  std::sort(classes.begin(), classes.end(),
            [&](const StrategyClass& a, const StrategyClass& b) { return position(a.label) < position(b.label); });
  return classes;
}

double quantum_ne_payoff(const PayoffTable& table, double x) {
  require_x(x);
  return (-4.0 * table.n() * x + 2.0 * table.n() + table.p()) / 3.0;
}

double classical_ne_payoff(const PayoffTable& table, double x) {
  require_x(x);
  return table.q() * (1.0 - x);
}

std::optional<double> critical_corruption(const PayoffTable& table) {
  const double numerator = 2.0 * table.n() + table.p() - 3.0 * table.q();
  const double denominator = 4.0 * table.n() - 3.0 * table.q();
  if (numerator <= 0.0) return std::nullopt;
  return numerator / denominator;
}

std::string_view to_string(Dominant d) {
  switch (d) {
    case Dominant::Quantum: return "quantum";
    case Dominant::Classical: return "classical";
    case Dominant::Tie: return "tie";
  }
  return "?";
}

EquilibriumReport dominance(const PayoffTable& table, double x) {
  EquilibriumReport r;
  r.x = x;
  r.quantum_ne_mean = quantum_ne_payoff(table, x);
  r.classical_ne_mean = classical_ne_payoff(table, x);
  if (r.quantum_ne_mean > r.classical_ne_mean + kDominanceTol) {
    r.dominant = Dominant::Quantum;
  } else if (r.classical_ne_mean > r.quantum_ne_mean + kDominanceTol) {
    r.dominant = Dominant::Classical;
  } else {
    r.dominant = Dominant::Tie;
  }
  return r;
}

std::string_view to_string(SweptParameter s) {
  switch (s) {
    case SweptParameter::X: return "x";
    case SweptParameter::N: return "n";
    case SweptParameter::Q: return "q";
  }
  return "?";
}

SweptParameter parse_swept(std::string_view s) {
  if (s == "x") return SweptParameter::X;
  if (s == "n") return SweptParameter::N;
  if (s == "q") return SweptParameter::Q;
  throw std::invalid_argument("swept parameter must be one of x, n, q");
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
  if (points == 0) throw std::invalid_argument("grid needs at least one point");
  if (!(std::isfinite(lo) && std::isfinite(hi))) throw std::invalid_argument("grid bounds must be finite");
  if (points > 1 && !(lo < hi)) throw std::invalid_argument("grid range is empty or inverted");
  std::vector<double> grid(points);
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

std::vector<SweepRecord> sweep(const SweepTemplate& base, SweptParameter swept, std::span<const double> grid,
                               unsigned threads) {
  std::vector<SweepRecord> out(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, grid.size())));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) out[i] = evaluate_point(base, swept, grid[i]);
  };
  if (threads == 1) {
    worker();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  return out;
}

}  // namespace qdilemma
