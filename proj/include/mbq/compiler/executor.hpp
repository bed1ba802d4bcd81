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
#include <vector>

#include "mbq/compiler/program.hpp"
#include "mbq/pauliframe.hpp"
#include "mbq/rng.hpp"
#include "mbq/statevec.hpp"

namespace mbq {

struct ExecOptions {
  /// Eigenvalues for the first measurements, in program order.
  std::span<const int> forced;
  /// Test hook: skip every frame update.
  bool drop_feedforward = false;
};

struct RunRecord {
  /// Physical state of the logical qubits, in logical order.
  StateVector final_state;
  /// Pending byproduct: final_state = frame * ideal state.
  PauliFrame frame{1};
  /// Ideal eigenvalue per register.
  std::vector<int> registers;
  /// Circuit-level measure and prepare results.
  std::vector<int> records;
  std::uint64_t seed = 0;
  /// Discarded-wire eigenvalue bits, in discard order.
  std::string residue;
};

namespace detail {

inline int parity_eigenvalue(std::span<const int> regs, bool invert, const std::vector<int>& registers) {
  int bit = invert ? 1 : 0;
  for (int r : regs) {
    if (r < 0 || static_cast<std::size_t>(r) >= registers.size() || registers[static_cast<std::size_t>(r)] == 0) {
      throw ProgramError("register " + std::to_string(r) + " read before it was set");
    }
    bit ^= outcome_bit(registers[static_cast<std::size_t>(r)]);
  }
  return bit_eigenvalue(bit);
}

}  // namespace detail

/// Runs a measurement program on `input`. Each measurement is taken in the
/// frame of the wires it touches, so the registers always hold ideal
/// outcomes and no gate has to be undone.
inline RunRecord execute(const MeasurementProgram& program, const StateVector& input, Rng& rng,
                         ExecOptions options = {}) {
  if (input.num_qubits() != program.n_logical) throw InputError("input state width does not match the program");
  StateVector s = input;
  std::vector<int> pos(program.n_wires, -1);
  for (std::size_t q = 0; q < program.n_logical; ++q) pos[q] = static_cast<int>(q);
  std::vector<Pauli> frame(program.n_wires, Pauli::I);
  std::uint8_t phase = 0;
  RunRecord rec{s, PauliFrame(program.n_logical), std::vector<int>(program.n_registers, 0),
                std::vector<int>(program.n_records, 0), 0, {}};
  std::size_t n_measured = 0;

  auto wire_pos = [&](int w) -> std::size_t {
    if (w < 0 || static_cast<std::size_t>(w) >= pos.size() || pos[static_cast<std::size_t>(w)] < 0) {
      throw ProgramError("wire " + std::to_string(w) + " is not live");
    }
    return static_cast<std::size_t>(pos[static_cast<std::size_t>(w)]);
  };

  for (const auto& in : program.instructions) {
    if (const auto* a = std::get_if<AllocateInstr>(&in)) {
      s = s.with_qubit(a->basis);
      pos.at(static_cast<std::size_t>(a->wire)) = static_cast<int>(s.num_qubits() - 1);
    } else if (const auto* m = std::get_if<MeasureInstr>(&in)) {
      std::vector<std::size_t> where;
      std::vector<Pauli> local_frame;
      for (int w : m->wires) {
        where.push_back(wire_pos(w));
        local_frame.push_back(frame[static_cast<std::size_t>(w)]);
      }
      const Observable actual = m->observable.conjugated_by(PauliString(local_frame));
      if (program.mode == PrimitiveMode::Strict && !strict_family(actual)) {
        throw InternalError("strict program measured " + actual.to_string());
      }
      std::optional<int> forced;
      if (n_measured < options.forced.size()) forced = options.forced[n_measured];
      ++n_measured;
      // The frame maps an ideal +1 eigenvector to a +1 eigenvector of the
      // conjugated observable, so the outcome is already the ideal one.
      const auto out = measure_inplace(s, actual.embedded(s.num_qubits(), where), rng, forced);
      rec.registers.at(static_cast<std::size_t>(m->reg)) = out.eigenvalue;
    } else if (const auto* f = std::get_if<FrameInstr>(&in)) {
      if (detail::parity_eigenvalue(f->regs, f->invert, rec.registers) == -1 && !options.drop_feedforward) {
        auto& cur = frame.at(static_cast<std::size_t>(f->wire));
        phase = static_cast<std::uint8_t>((phase + product_phase(f->pauli, cur)) % 4);
        cur = product_letter(f->pauli, cur);
      }
    } else if (const auto* d = std::get_if<DiscardInstr>(&in)) {
      const int e = detail::parity_eigenvalue(d->regs, d->invert, rec.registers);
      const std::size_t p = wire_pos(d->wire);
      auto& cur = frame.at(static_cast<std::size_t>(d->wire));
      const Observable basis = d->basis.conjugated_by(PauliString({cur}));
      s = s.without_qubit(p, basis.eigenvector(e));
      rec.residue.push_back(outcome_bit(e) ? '1' : '0');
      cur = Pauli::I;
      pos[static_cast<std::size_t>(d->wire)] = -1;
      for (auto& q : pos) {
        if (q > static_cast<int>(p)) --q;
      }
    } else {
      const auto& r = std::get<RecordInstr>(in);
      rec.records.at(static_cast<std::size_t>(r.index)) = detail::parity_eigenvalue(r.regs, r.invert, rec.registers);
    }
  }
  if (options.forced.size() > n_measured) throw InputError("more forced outcomes than measurements");
  if (s.num_qubits() != program.n_logical) throw InternalError("program left extra wires alive");

  std::vector<std::size_t> order;
  std::vector<Pauli> out_frame;
  for (int w : program.output_wires) {
    order.push_back(wire_pos(w));
    out_frame.push_back(frame[static_cast<std::size_t>(w)]);
  }
  rec.final_state = s.permuted(order);
  rec.frame = PauliFrame(PauliString(std::move(out_frame), phase));
  return rec;
}

inline RunRecord execute(const MeasurementProgram& program, const StateVector& input, std::uint64_t seed,
                         ExecOptions options = {}) {
  Rng rng(seed);
  RunRecord rec = execute(program, input, rng, options);
  rec.seed = seed;
  return rec;
}

}  // namespace mbq
