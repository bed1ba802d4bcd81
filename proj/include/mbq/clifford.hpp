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

#include <cmath>
#include <span>
#include <string>

#include "mbq/gates.hpp"
#include "mbq/pauli.hpp"

namespace mbq {

/// Gates the frame machinery knows how to conjugate Paulis through. CH is
/// not Clifford: it maps some Paulis outside the group and those inputs are
/// rejected with ContractError.
enum class Clifford { H, G, CNOT, CH };

inline Gate clifford_gate(Clifford c) {
  switch (c) {
    case Clifford::H: return Gate::H;
    case Clifford::G: return Gate::G;
    case Clifford::CNOT: return Gate::CNOT;
    case Clifford::CH: return Gate::CH;
  }
  return Gate::I;
}

/// Writes m as phase * P with P a Pauli word, or returns nullopt.
inline std::optional<PauliString> decompose_pauli(const Matrix& m, std::size_t k, double tol = kStateTolerance) {
  const std::size_t count = std::size_t{1} << (2 * k);
  const double d = static_cast<double>(std::size_t{1} << k);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<Pauli> letters(k);
    for (std::size_t q = 0; q < k; ++q) letters[q] = static_cast<Pauli>((code >> (2 * (k - 1 - q))) & 3U);
    PauliString p(letters);
    const Matrix pm = p.to_matrix();
    const cplx c = (pm.adjoint() * m).trace() / d;
    if (std::abs(std::abs(c) - 1.0) > tol) continue;
    for (std::uint8_t ph = 0; ph < 4; ++ph) {
      PauliString cand = p.with_phase(ph);
      if (std::abs(cand.phase_value() - c) < 1e-6 && (cand.to_matrix() - m).cwiseAbs().maxCoeff() <= tol) {
        return cand;
      }
    }
  }
  return std::nullopt;
}

/// C P C^dagger as a phase-tracked Pauli word; `targets` are the gate's
/// qubits within `pauli` (control first for two-qubit gates).
inline PauliString conjugate_by(const PauliString& pauli, Clifford c, std::span<const std::size_t> targets) {
  const Gate g = clifford_gate(c);
  if (targets.size() != gate_arity(g)) throw InputError("wrong number of targets for conjugation");
  for (std::size_t a = 0; a < targets.size(); ++a) {
    if (targets[a] >= pauli.size()) throw InputError("conjugation target out of range");
    for (std::size_t b = a + 1; b < targets.size(); ++b) {
      if (targets[a] == targets[b]) throw InputError("duplicate conjugation target");
    }
  }
  const PauliString local = pauli.restricted(targets);
  const Matrix u = named_gate(g).matrix();
  const Matrix conj = u * local.to_matrix() * u.adjoint();
  auto image = decompose_pauli(conj, targets.size());
  if (!image) {
    throw ContractError(std::string(gate_name(g)) + " maps " + local.display() + " outside the Pauli group");
  }
  PauliString out = pauli;
  for (std::size_t k = 0; k < targets.size(); ++k) out.set(targets[k], (*image)[k]);
  return out.times_i_power(image->phase());
}

inline PauliString conjugate_by(const PauliString& pauli, Clifford c, std::initializer_list<std::size_t> targets) {
  return conjugate_by(pauli, c, std::span<const std::size_t>(targets.begin(), targets.size()));
}

}  // namespace mbq
