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
#include <cstdint>
#include <string>
#include <string_view>

#include "qdilemma/linalg.hpp"

namespace qdilemma {

/// Three-qubit Pauli expectation values T[i1][i2][i3] = Tr(rho s_i1 x s_i2 x s_i3)
/// with s_0..s_3 = I, X, Y, Z.
class TomographyTensor {
 public:
  static constexpr std::size_t kSize = 64;

  TomographyTensor() = default;
  explicit TomographyTensor(const std::array<double, kSize>& values) : t_(values) {}

  double operator()(std::size_t i1, std::size_t i2, std::size_t i3) const { return t_.at(index(i1, i2, i3)); }
  double& operator()(std::size_t i1, std::size_t i2, std::size_t i3) { return t_.at(index(i1, i2, i3)); }
  const std::array<double, kSize>& values() const { return t_; }

  static std::size_t index(std::size_t i1, std::size_t i2, std::size_t i3) { return 16 * i1 + 4 * i2 + i3; }
  /// "IXZ"-style label of a flat index.
  static std::string label(std::size_t flat);

  double max_abs_diff(const TomographyTensor& other) const;

 private:
  std::array<double, kSize> t_{};
};

struct ShotConfig {
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
};

/// s_i1 x s_i2 x s_i3 as an 8x8 operator.
Operator pauli_string(std::size_t i1, std::size_t i2, std::size_t i3);

TomographyTensor expectations(const DensityMatrix& rho);

/// Linear inversion rho = 1/8 sum T s_i1 x s_i2 x s_i3. The result is a raw
/// density matrix: Hermitian with unit trace but not necessarily PSD.
DensityMatrix reconstruct(const TomographyTensor& t);

/// Finite-statistics estimate of expectations(rho). Each of the 63
/// non-identity strings is measured `shots` times from its own random stream,
/// derived from (seed, string index), so the result depends only on the seed.
TomographyTensor estimate_expectations(const DensityMatrix& rho, const ShotConfig& cfg);

/// Uhlmann fidelity Tr sqrt(sqrt(sigma) rho sqrt(sigma)). rho may be raw;
/// negative eigenvalues of the inner product are clamped to zero.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues zeroed),
/// renormalized to unit trace.
DensityMatrix project_to_physical(const DensityMatrix& rho);

struct ReferenceState {
  DensityMatrix state;
  double hermiticity_defect = 0.0;  // max |rho - rho^dagger|
  double trace_defect = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part
};

/// Bundled fixtures by name. Known names: "class7_appendix".
ReferenceState load_reference_state(std::string_view name);

/// Parses the fixture text format: N lines of N decimals (real part), one
/// blank line, N lines of N decimals (imaginary part). Returns a raw state.
DensityMatrix parse_density_text(std::string_view text);
std::string format_density_text(const DensityMatrix& rho);

/// 64 whitespace-separated decimals in flat (i1, i2, i3) order; '#' starts a comment.
TomographyTensor parse_tensor_text(std::string_view text);
std::string format_tensor_text(const TomographyTensor& t);

}  // namespace qdilemma
