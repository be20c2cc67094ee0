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

#include "qdilemma/tomography.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <vector>

#include "qdilemma/fixtures.hpp"
#include "qdilemma/game.hpp"

namespace qdilemma {

namespace {

constexpr char kPauliLetters[] = {'I', 'X', 'Y', 'Z'};

const Operator& single_pauli(std::size_t i) {
  static const std::array<Operator, 4> paulis = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
  return paulis.at(i);
}

const std::array<Operator, TomographyTensor::kSize>& pauli_strings() {
  static const auto strings = [] {
    std::array<Operator, TomographyTensor::kSize> out;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t c = 0; c < 4; ++c)
          out[TomographyTensor::index(a, b, c)] = kron({single_pauli(a), single_pauli(b), single_pauli(c)});
    return out;
  }();
  return strings;
}

Complex trace_product(const Matrix& a, const Matrix& b) {
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, i);
  return s;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<double> parse_numbers(std::string_view line) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r' || line[pos] == '\n')) ++pos;
    if (pos >= line.size()) break;
    double v = 0.0;
    const char* begin = line.data() + pos;
    const char* end = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || (ptr != end && *ptr != ' ' && *ptr != '\t' && *ptr != '\r' && *ptr != '\n')) {
      throw std::invalid_argument("malformed number near '" + std::string(line.substr(pos, 16)) + "'");
    }
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite number in input");
    out.push_back(v);
    pos = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string TomographyTensor::label(std::size_t flat) {
  if (flat >= kSize) throw std::out_of_range("TomographyTensor::label: index out of range");
  return {kPauliLetters[flat / 16], kPauliLetters[(flat / 4) % 4], kPauliLetters[flat % 4]};
}

double TomographyTensor::max_abs_diff(const TomographyTensor& other) const {
  double m = 0.0;
  for (std::size_t i = 0; i < kSize; ++i) m = std::max(m, std::abs(t_[i] - other.t_[i]));
  return m;
}

Operator pauli_string(std::size_t i1, std::size_t i2, std::size_t i3) {
  if (i1 > 3 || i2 > 3 || i3 > 3) throw std::out_of_range("pauli_string: index must be in 0..3");
  return pauli_strings()[TomographyTensor::index(i1, i2, i3)];
}

TomographyTensor expectations(const DensityMatrix& rho) {
  if (rho.qubits() != 3) throw std::invalid_argument("expectations: expected a 3-qubit density matrix");
  std::array<double, TomographyTensor::kSize> t{};
  const auto& strings = pauli_strings();
  for (std::size_t k = 0; k < t.size(); ++k) {
    const Complex v = trace_product(rho.matrix(), strings[k].matrix());
    if (std::abs(v.imag()) > 1e-12) {
      throw std::invalid_argument("expectations: complex expectation value for " + TomographyTensor::label(k) +
                                  "; input is not Hermitian");
    }
    t[k] = v.real();
  }
  return TomographyTensor(t);
}

DensityMatrix reconstruct(const TomographyTensor& t) {
  if (std::abs(t(0, 0, 0) - 1.0) > 1e-12) throw std::invalid_argument("reconstruct: T[0,0,0] must equal 1");
  Matrix m = Matrix::Zero(8, 8);
  const auto& strings = pauli_strings();
  for (std::size_t k = 0; k < TomographyTensor::kSize; ++k) {
    const double v = t.values()[k];
    if (v != 0.0) m += strings[k].matrix() * v;
  }
  return DensityMatrix::raw(m / 8.0);
}

TomographyTensor estimate_expectations(const DensityMatrix& rho, const ShotConfig& cfg) {
  if (cfg.shots == 0) throw std::invalid_argument("estimate_expectations: shots must be at least 1");
  const TomographyTensor exact = expectations(rho);
  std::array<double, TomographyTensor::kSize> t{};
  t[0] = 1.0;
  const auto shots = static_cast<long long>(cfg.shots);
  for (std::size_t k = 1; k < t.size(); ++k) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(k)));
    const double p_plus = std::clamp((1.0 + exact.values()[k]) / 2.0, 0.0, 1.0);
    std::binomial_distribution<long long> draw(shots, p_plus);
    const long long plus = draw(rng);
    t[k] = static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
  }
  return TomographyTensor(t);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  if (sigma.is_raw()) throw std::invalid_argument("fidelity: target state must be physical");
  const Operator root = herm_sqrt(Operator(sigma.matrix())).root;
  const Operator inner(root.matrix() * rho.matrix() * root.matrix());
  const SqrtResult outer = herm_sqrt(inner);
  return outer.root.matrix().trace().real();
}

DensityMatrix project_to_physical(const DensityMatrix& rho) {
  const auto eig = hermitian_eigen((rho.matrix() + rho.matrix().adjoint()) * 0.5);
  Eigen::VectorXd kept(static_cast<Eigen::Index>(eig.values.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < eig.values.size(); ++i) {
    kept(static_cast<Eigen::Index>(i)) = std::max(0.0, eig.values[i]);
    total += kept(static_cast<Eigen::Index>(i));
  }
  if (total <= 0.0) throw std::invalid_argument("project_to_physical: no positive spectrum to keep");
  Matrix m = eig.vectors * (kept / total).cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return DensityMatrix::physical((m + m.adjoint()) * 0.5);
}

ReferenceState load_reference_state(std::string_view name) {
  if (name != "class7_appendix") throw std::invalid_argument("unknown reference state '" + std::string(name) + "'");
  DensityMatrix rho = parse_density_text(fixtures::kClass7Appendix);
  ReferenceState out{rho};
  out.hermiticity_defect = rho.hermiticity_defect();
  out.trace_defect = std::abs(rho.trace() - Complex(1.0));
  out.min_eigenvalue = rho.min_eigenvalue();
  return out;
}

DensityMatrix parse_density_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    lines.push_back(trim(line));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  const auto blank = std::find(lines.begin(), lines.end(), std::string_view{});
  if (blank == lines.end()) throw std::invalid_argument("density text: missing blank line between real and imaginary blocks");
  const auto dim = static_cast<std::size_t>(blank - lines.begin());
  if (lines.size() != 2 * dim + 1) {
    throw std::invalid_argument("density text: expected two blocks of " + std::to_string(dim) + " lines");
  }

  Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t block = 0; block < 2; ++block) {
    for (std::size_t r = 0; r < dim; ++r) {
      const auto values = parse_numbers(lines[block * (dim + 1) + r]);
      if (values.size() != dim) {
        throw std::invalid_argument("density text: row " + std::to_string(r + 1) + " has " +
                                    std::to_string(values.size()) + " entries, expected " + std::to_string(dim));
      }
      for (std::size_t c = 0; c < dim; ++c) {
        auto& entry = m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (block == 0) {
          entry = Complex(values[c], 0.0);
        } else {
          entry = Complex(entry.real(), values[c]);
        }
      }
    }
  }
  return DensityMatrix::raw(std::move(m));
}

std::string format_density_text(const DensityMatrix& rho) {
  std::string out;
  for (int part = 0; part < 2; ++part) {
    if (part == 1) out += '\n';
    for (std::size_t r = 0; r < rho.dim(); ++r) {
      for (std::size_t c = 0; c < rho.dim(); ++c) {
        if (c) out += ' ';
        out += format_number(part == 0 ? rho(r, c).real() : rho(r, c).imag());
      }
      out += '\n';
    }
  }
  return out;
}

TomographyTensor parse_tensor_text(std::string_view text) {
  std::string cleaned;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    cleaned.append(line);
    cleaned += ' ';
    start = end + 1;
  }
  const auto values = parse_numbers(cleaned);
  if (values.size() != TomographyTensor::kSize) {
    throw std::invalid_argument("tensor text: expected 64 values, got " + std::to_string(values.size()));
  }
  std::array<double, TomographyTensor::kSize> t{};
  std::copy(values.begin(), values.end(), t.begin());
  return TomographyTensor(t);
}

std::string format_tensor_text(const TomographyTensor& t) {
  std::string out;
  for (std::size_t k = 0; k < TomographyTensor::kSize; ++k) {
    out += format_number(t.values()[k]);
    out += "  # ";
    out += TomographyTensor::label(k);
    out += '\n';
  }
  return out;
}

}  // namespace qdilemma
