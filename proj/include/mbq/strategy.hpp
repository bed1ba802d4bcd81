// Copyright 2026 The mbq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "mbq/core.hpp"
#include "mbq/gates.hpp"

namespace mbq {

/// A one-qubit strategy |z> = |0> + z|1>, with z = infinity standing for |1>.
class Strategy {
 public:
  static Strategy at(cplx z) { return Strategy(z); }
  static Strategy infinity() { return Strategy(std::nullopt); }

  bool is_infinite() const noexcept { return !z_.has_value(); }
  cplx z() const {
    if (!z_) throw InputError("strategy at infinity has no finite coordinate");
    return *z_;
  }

  /// Normalized amplitudes (a0, a1).
  std::array<cplx, 2> amplitudes() const {
    if (!z_) return {cplx{0, 0}, cplx{1, 0}};
    const double norm = std::sqrt(1.0 + std::norm(*z_));
    return {cplx{1.0 / norm, 0}, *z_ / norm};
  }

 private:
  explicit Strategy(std::optional<cplx> z) : z_(z) {
    if (z_ && !(std::isfinite(z_->real()) && std::isfinite(z_->imag()))) {
      throw InputError("strategy coordinate must be finite; use Strategy::infinity()");
    }
  }

  std::optional<cplx> z_;
};

/// Expectation of (sigma_x, sigma_y, sigma_z) in the strategy, a unit vector.
inline std::array<double, 3> bloch_vector(const Strategy& s) {
  if (s.is_infinite()) return {0.0, 0.0, -1.0};
  const cplx z = s.z();
  const double n = 1.0 + std::norm(z);
  return {2.0 * z.real() / n, 2.0 * z.imag() / n, (1.0 - std::norm(z)) / n};
}

/// U = I cos(alpha) + i (sigma . E) sin(alpha), E the Bloch vector of s.
inline UnitaryMatrix u_z_alpha(const Strategy& s, double alpha) {
  const auto e = bloch_vector(s);
  const cplx i{0.0, 1.0};
  Matrix m = Matrix::Identity(2, 2) * std::cos(alpha) +
             i * std::sin(alpha) *
                 (e[0] * pauli_matrix(Pauli::X) + e[1] * pauli_matrix(Pauli::Xpp) +
                  e[2] * pauli_matrix(Pauli::Xp));
  return UnitaryMatrix(m, kNormTolerance);
}

}  // namespace mbq
