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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>

#include "qdilemma/analysis.hpp"
#include "qdilemma/game.hpp"
#include "qdilemma/noise.hpp"
#include "qdilemma/tomography.hpp"

namespace py = pybind11;
using namespace py::literals;

namespace {

using namespace qdilemma;

py::array_t<double> tensor_to_array(const TomographyTensor& t) {
  py::array_t<double> out({4, 4, 4});
  auto view = out.mutable_unchecked<3>();
  for (py::ssize_t a = 0; a < 4; ++a)
    for (py::ssize_t b = 0; b < 4; ++b)
      for (py::ssize_t c = 0; c < 4; ++c)
        view(a, b, c) = t(static_cast<std::size_t>(a), static_cast<std::size_t>(b), static_cast<std::size_t>(c));
  return out;
}

TomographyTensor tensor_from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 3 || arr.shape(0) != 4 || arr.shape(1) != 4 || arr.shape(2) != 4) {
    throw std::invalid_argument("tomography tensor must have shape (4, 4, 4)");
  }
  std::array<double, TomographyTensor::kSize> v{};
  std::copy(arr.data(), arr.data() + v.size(), v.begin());
  return TomographyTensor(v);
}

py::dict record_to_dict(const SweepRecord& r) {
  py::dict d("swept"_a = std::string(to_string(r.swept)), "value"_a = r.value, "p"_a = r.p, "q"_a = r.q, "n"_a = r.n,
             "x"_a = r.x, "valid"_a = r.valid);
  if (!r.valid) {
    d["error"] = r.error;
    return d;
  }
  d["quantum_ne"] = r.quantum_ne;
  d["classical_ne"] = r.classical_ne;
  d["x_c"] = r.x_c;
  d["dominant"] = std::string(to_string(r.dominant));
  d["sim_quantum_ne"] = r.simulated_quantum_ne;
  d["sim_classical_ne"] = r.simulated_classical_ne;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Noisy three-player quantum dilemma: exact simulation and analysis";
  m.attr("__version__") = QDILEMMA_VERSION;
  constexpr double kHalfPi = std::numbers::pi / 2;

  m.def(
      "entangler", [](double gamma) { return entangler(EntanglerParams(gamma)).matrix(); }, "gamma"_a = kHalfPi);
  m.def(
      "disentangler", [](double gamma) { return disentangler(EntanglerParams(gamma)).matrix(); }, "gamma"_a = kHalfPi);
  m.def("decompose_entangler", [] {
    py::list out;
    for (const auto& g : decompose_entangler()) {
      out.append(py::dict("name"_a = g.name, "qubits"_a = g.qubits, "angle"_a = g.angle, "matrix"_a = g.matrix.matrix()));
    }
    return out;
  });

  m.def(
      "play",
      [](const std::string& profile, double x, double gamma) {
        return play(parse_profile(profile), corrupted_input(CorruptionModel(x)), EntanglerParams(gamma)).probs();
      },
      "profile"_a, "x"_a = 0.0, "gamma"_a = kHalfPi,
      "Outcome probabilities (index = bits of players 1, 2, 3) on the corrupted source.");
  m.def(
      "payoff",
      [](const std::array<double, 8>& probs, double p, double q, double n) {
        const PayoffVector v = payoff(OutcomeDistribution(probs), PayoffTable(p, q, n));
        return py::dict("player1"_a = v.player1, "player2"_a = v.player2, "player3"_a = v.player3, "mean"_a = v.mean);
      },
      "probs"_a, "p"_a = 1.0, "q"_a = 2.0, "n"_a = 9.0);

  m.def(
      "class_table",
      [](double p, double q, double n, double x) {
        const PayoffTable table(p, q, n);
        py::list out;
        for (const auto& cls : labeled_classes()) {
          py::list configs;
          for (const auto& prof : cls.configurations) configs.append(profile_string(prof));
          out.append(py::dict("label"_a = cls.label, "multiset"_a = cls.multiset, "size"_a = cls.size(),
                              "configurations"_a = configs, "mean"_a = class_mean_payoff(cls, table, x)));
        }
        return out;
      },
      "p"_a = 1.0, "q"_a = 2.0, "n"_a = 9.0, "x"_a = 0.0);

  m.def(
      "quantum_ne_payoff", [](double p, double q, double n, double x) { return quantum_ne_payoff(PayoffTable(p, q, n), x); },
      "p"_a, "q"_a, "n"_a, "x"_a);
  m.def(
      "classical_ne_payoff",
      [](double p, double q, double n, double x) { return classical_ne_payoff(PayoffTable(p, q, n), x); }, "p"_a, "q"_a,
      "n"_a, "x"_a);
  m.def(
      "critical_corruption", [](double p, double q, double n) { return critical_corruption(PayoffTable(p, q, n)); },
      "p"_a = 1.0, "q"_a = 2.0, "n"_a = 9.0, "None when the quantum equilibrium is never ahead.");
  m.def(
      "dominance",
      [](double p, double q, double n, double x) { return std::string(to_string(dominance(PayoffTable(p, q, n), x).dominant)); },
      "p"_a, "q"_a, "n"_a, "x"_a);
  m.def(
      "sweep",
      [](const std::string& swept, const std::vector<double>& grid, double p, double q, double n, double x, double gamma) {
        py::list out;
        for (const auto& r : sweep(SweepTemplate{p, q, n, x, gamma}, parse_swept(swept), grid)) out.append(record_to_dict(r));
        return out;
      },
      "swept"_a, "grid"_a, "p"_a = 1.0, "q"_a = 2.0, "n"_a = 9.0, "x"_a = 0.0, "gamma"_a = kHalfPi);

  m.def(
      "corrupted_input", [](double x) { return corrupted_input(CorruptionModel(x)).matrix(); }, "x"_a);
  m.def("ancilla_prepare", [](double x) { return ancilla_prepare(x).matrix(); }, "x"_a);
  m.def("theta_for_x", &theta_for_x, "x"_a);

  m.def(
      "expectations", [](const Matrix& rho) { return tensor_to_array(expectations(DensityMatrix::raw(rho))); }, "rho"_a);
  m.def(
      "reconstruct",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& t) {
        return reconstruct(tensor_from_array(t)).matrix();
      },
      "tensor"_a);
  m.def(
      "estimate_expectations",
      [](const Matrix& rho, std::uint64_t shots, std::uint64_t seed) {
        return tensor_to_array(estimate_expectations(DensityMatrix::raw(rho), ShotConfig{shots, seed}));
      },
      "rho"_a, "shots"_a, "seed"_a = 0);
  m.def(
      "fidelity",
      [](const Matrix& rho, const Matrix& sigma) {
        return fidelity(DensityMatrix::raw(rho), DensityMatrix::physical(sigma));
      },
      "rho"_a, "sigma"_a);
  m.def(
      "load_reference_state", [](const std::string& name) { return load_reference_state(name).state.matrix(); },
      "name"_a);
}
