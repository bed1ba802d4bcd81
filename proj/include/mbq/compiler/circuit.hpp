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

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mbq/gates.hpp"
#include "mbq/observable.hpp"
#include "mbq/pauli.hpp"
#include "mbq/rng.hpp"
#include "mbq/statevec.hpp"

namespace mbq {

struct GateOp {
  Gate gate;
  std::vector<std::size_t> targets;
};

/// Projective measurement of a Hermitian Pauli word over all circuit qubits.
struct MeasureOp {
  PauliString observable;
};

/// Resets one qubit to |0>, |1>, |+> or |->.
struct PrepareOp {
  std::size_t qubit;
  char basis;
};

using CircuitOp = std::variant<GateOp, MeasureOp, PrepareOp>;

class Circuit {
 public:
  explicit Circuit(std::size_t n_qubits) : n_(n_qubits) {
    if (n_ == 0 || n_ > kMaxQubits) throw InputError("circuit qubit count must be in 1.." + std::to_string(kMaxQubits));
  }

  std::size_t num_qubits() const noexcept { return n_; }
  std::span<const CircuitOp> ops() const noexcept { return ops_; }

  Circuit& gate(Gate g, std::vector<std::size_t> targets) {
    if (targets.size() != gate_arity(g)) {
      throw InputError(std::string(gate_name(g)) + " takes " + std::to_string(gate_arity(g)) + " qubit(s)");
    }
    check_qubits(targets);
    ops_.push_back(GateOp{g, std::move(targets)});
    return *this;
  }

  Circuit& measure(PauliString observable) {
    if (observable.size() != n_) throw InputError("measured observable width does not match the circuit");
    if (!observable.is_hermitian()) throw InputError("measured observable must be Hermitian");
    if (observable.is_identity()) throw InputError("measuring the identity is meaningless");
    ops_.push_back(MeasureOp{std::move(observable)});
    return *this;
  }

  Circuit& prepare(std::size_t qubit, char basis) {
    check_qubits({qubit});
    if (basis != '0' && basis != '1' && basis != '+' && basis != '-') {
      throw InputError(std::string("unknown preparation basis '") + basis + "'");
    }
    ops_.push_back(PrepareOp{qubit, basis});
    return *this;
  }

  bool is_unitary() const {
    for (const auto& op : ops_) {
      if (!std::holds_alternative<GateOp>(op)) return false;
    }
    return true;
  }

  std::size_t gate_count() const {
    std::size_t c = 0;
    for (const auto& op : ops_) c += std::holds_alternative<GateOp>(op);
    return c;
  }

  /// Dense unitary of a gate-only circuit.
  UnitaryMatrix unitary() const {
    if (!is_unitary()) throw InputError("circuit contains non-unitary operations");
    const std::size_t d = std::size_t{1} << n_;
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t col = 0; col < d; ++col) {
      std::string bits(n_, '0');
      for (std::size_t q = 0; q < n_; ++q) bits[q] = ((col >> (n_ - 1 - q)) & 1U) ? '1' : '0';
      StateVector s = StateVector::basis(n_, bits);
      for (const auto& op : ops_) {
        const auto& g = std::get<GateOp>(op);
        s.apply_inplace(named_gate(g.gate), g.targets);
      }
      for (std::size_t row = 0; row < d; ++row) {
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = s[row];
      }
    }
    return UnitaryMatrix(m);
  }

 private:
  void check_qubits(std::span<const std::size_t> qs) const {
    for (std::size_t a = 0; a < qs.size(); ++a) {
      if (qs[a] >= n_) throw InputError("qubit " + std::to_string(qs[a]) + " out of range");
      for (std::size_t b = a + 1; b < qs.size(); ++b) {
        if (qs[a] == qs[b]) throw InputError("qubit " + std::to_string(qs[a]) + " repeated");
      }
    }
  }
  void check_qubits(std::initializer_list<std::size_t> qs) const {
    check_qubits(std::span<const std::size_t>(qs.begin(), qs.size()));
  }

  std::size_t n_;
  std::vector<CircuitOp> ops_;
};

struct DirectRun {
  StateVector state;
  /// Eigenvalues of measure and prepare operations in program order.
  std::vector<int> outcomes;
};

/// Runs the circuit gate by gate. `forced` supplies outcomes for the first
/// measure/prepare operations; the rest are sampled.
inline DirectRun simulate(const Circuit& circuit, StateVector state, Rng& rng, std::span<const int> forced = {}) {
  if (state.num_qubits() != circuit.num_qubits()) throw InputError("input state width does not match the circuit");
  std::vector<int> outcomes;
  auto next_forced = [&]() -> std::optional<int> {
    if (outcomes.size() < forced.size()) return forced[outcomes.size()];
    return std::nullopt;
  };
  const std::size_t n = circuit.num_qubits();
  for (const auto& op : circuit.ops()) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      state.apply_inplace(named_gate(g->gate), g->targets);
    } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
      outcomes.push_back(measure_inplace(state, Observable::from_pauli(m->observable), rng, next_forced()).eigenvalue);
    } else {
      const auto& p = std::get<PrepareOp>(op);
      const bool z_basis = p.basis == '0' || p.basis == '1';
      const Observable obs = Observable::parse_pauli(z_basis ? "Xp" : "X").embedded(n, {p.qubit});
      const int o = measure_inplace(state, obs, rng, next_forced()).eigenvalue;
      outcomes.push_back(o);
      const int wanted = (p.basis == '0' || p.basis == '+') ? 1 : -1;
      if (o != wanted) state.apply_pauli_inplace(PauliString::single(n, p.qubit, z_basis ? Pauli::X : Pauli::Xp));
    }
  }
  return DirectRun{std::move(state), std::move(outcomes)};
}

}  // namespace mbq
