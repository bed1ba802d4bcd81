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

#include <algorithm>
#include <string>
#include <vector>

#include "mbq/compiler/circuit.hpp"
#include "mbq/compiler/program.hpp"

namespace mbq {

/// Deepest nesting of measurement rewrites the strict lowering may produce.
inline constexpr int kMaxRewriteDepth = 3;

namespace detail {

/// Parity of register bits, as carried by frame, discard and record rules.
struct Parity {
  std::vector<int> regs;
  bool invert = false;

  Parity operator^(const Parity& o) const {
    Parity p{regs, invert != o.invert};
    for (int r : o.regs) {
      auto it = std::find(p.regs.begin(), p.regs.end(), r);
      if (it == p.regs.end()) {
        p.regs.push_back(r);
      } else {
        p.regs.erase(it);
      }
    }
    return p;
  }
};

class Lowering {
 public:
  Lowering(std::size_t n, PrimitiveMode mode) {
    prog_.n_logical = n;
    prog_.mode = mode;
    for (std::size_t q = 0; q < n; ++q) wire_of_.push_back(new_wire());
  }

  void gate(const GateOp& op) {
    const std::size_t a = op.targets[0];
    switch (op.gate) {
      case Gate::I: return;
      case Gate::X:
      case Gate::Xp:
      case Gate::Xpp: return frame(wire_of_[a], *gate_as_pauli(op.gate), Parity{{}, true});
      case Gate::H: return h(a, 0);
      case Gate::T: return t(a, 0);
      case Gate::S: return repeat_t(a, 2, 0);
      case Gate::G: return g(a);
      case Gate::CNOT: return cnot(a, op.targets[1], 0);
      case Gate::CH: return ch(a, op.targets[1]);
      case Gate::SWAP: std::swap(wire_of_[a], wire_of_[op.targets[1]]); return;
    }
    throw InternalError("unhandled gate in lowering");
  }

  void measure(const MeasureOp& op) {
    std::vector<std::size_t> qs;
    std::vector<Pauli> letters;
    for (std::size_t q = 0; q < op.observable.size(); ++q) {
      if (op.observable[q] != Pauli::I) {
        qs.push_back(q);
        letters.push_back(op.observable[q]);
      }
    }
    Parity p = measure_word(qs, letters, 0);
    if (op.observable.phase() == 2) p.invert = !p.invert;
    record(p);
  }

  void prepare(const PrepareOp& op) {
    const bool z_basis = op.basis == '0' || op.basis == '1';
    Parity p = measure_word({op.qubit}, {z_basis ? Pauli::Xp : Pauli::X}, 0);
    record(p);
    Parity flip = p;
    if (op.basis == '1' || op.basis == '-') flip.invert = !flip.invert;
    frame(wire_of_[op.qubit], z_basis ? Pauli::X : Pauli::Xp, flip);
  }

  MeasurementProgram finish() {
    for (int w : wire_of_) prog_.output_wires.push_back(w);
    std::vector<int> live;
    for (std::size_t w = 0; w < alive_.size(); ++w) {
      if (alive_[w]) live.push_back(static_cast<int>(w));
    }
    auto outs = prog_.output_wires;
    std::sort(outs.begin(), outs.end());
    if (live != outs) throw InternalError("lowering left ancilla wires alive");
    if (prog_.mode == PrimitiveMode::Strict) validate_strict(prog_);
    return std::move(prog_);
  }

 private:
  bool strict() const { return prog_.mode == PrimitiveMode::Strict; }

  int new_wire() {
    alive_.push_back(true);
    return static_cast<int>(prog_.n_wires++);
  }

  int allocate(char basis) {
    const int w = new_wire();
    ++prog_.ancillas;
    ++prog_.gadget_expansions;
    prog_.instructions.push_back(AllocateInstr{w, basis});
    return w;
  }

  Parity native(std::vector<int> wires, Observable obs, int depth) {
    if (depth > kMaxRewriteDepth) throw InternalError("measurement rewrite exceeded the depth bound");
    std::string family = "direct";
    if (strict()) {
      auto f = strict_family(obs);
      if (!f) throw InternalError("strict lowering produced " + obs.to_string());
      family = *f;
    }
    const int reg = static_cast<int>(prog_.n_registers++);
    prog_.instructions.push_back(MeasureInstr{std::move(wires), std::move(obs), reg, std::move(family), depth});
    return Parity{{reg}, false};
  }

  Parity native(std::vector<int> wires, std::string_view letters, int depth) {
    return native(std::move(wires), Observable::parse_pauli(letters), depth);
  }

  void frame(int wire, Pauli p, const Parity& when) {
    prog_.instructions.push_back(FrameInstr{wire, p, when.regs, when.invert});
  }

  void discard(int wire, Observable basis, const Parity& eig) {
    alive_[static_cast<std::size_t>(wire)] = false;
    prog_.instructions.push_back(DiscardInstr{wire, std::move(basis), eig.regs, eig.invert});
  }

  void record(const Parity& p) {
    prog_.instructions.push_back(RecordInstr{static_cast<int>(prog_.n_records++), p.regs, p.invert});
  }

  /// X' on a bare wire: directly, or through an X-prepared helper
  /// (X on the helper, then X⊗X' on helper and wire).
  Parity measure_z_wire(int wire, int depth) {
    if (!strict()) return native({wire}, "Xp", depth);
    const int aux = allocate('0');
    const Parity r1 = native({aux}, "X", depth + 1);
    const Parity r2 = native({aux, wire}, "X Xp", depth + 1);
    discard(aux, Observable::parse_pauli("X"), r1);
    return r1 ^ r2;
  }

  // Basis rotations used by the strict rewrite, as gate lists in time order.
  static std::vector<Gate> to_x(Pauli p) {
    if (p == Pauli::Xp) return {Gate::H};
    if (p == Pauli::Xpp) return {Gate::S, Gate::S, Gate::S};  // S^dagger
    return {};
  }
  static std::vector<Gate> to_z(Pauli p) {
    if (p == Pauli::X) return {Gate::H};
    if (p == Pauli::Xpp) return {Gate::S, Gate::S, Gate::S, Gate::H};
    return {};
  }
  static std::vector<Gate> inverse(const std::vector<Gate>& gates) {
    std::vector<Gate> out;
    for (auto it = gates.rbegin(); it != gates.rend();) {
      if (*it != Gate::S) {
        out.push_back(*it++);
        continue;
      }
      int run = 0;
      for (; it != gates.rend() && *it == Gate::S; ++it) ++run;
      out.insert(out.end(), static_cast<std::size_t>((4 - run % 4) % 4), Gate::S);
    }
    return out;
  }
  static std::size_t cost(const std::vector<Gate>& gates) {
    std::size_t c = 0;
    for (Gate g : gates) c += g == Gate::S ? 4 : 1;
    return c;
  }

  void apply_gates(std::size_t q, const std::vector<Gate>& gates, int depth) {
    for (Gate g : gates) {
      if (g == Gate::H) {
        h(q, depth);
      } else {
        repeat_t(q, 2, depth);
      }
    }
  }

  Parity measure_word(std::vector<std::size_t> qs, std::vector<Pauli> letters, int depth) {
    if (!strict()) {
      std::vector<int> wires;
      PauliString local(std::move(letters));
      for (std::size_t q : qs) wires.push_back(wire_of_[q]);
      return native(std::move(wires), Observable::from_pauli(local), depth);
    }
    if (qs.size() == 1) {
      const std::size_t q = qs[0];
      if (letters[0] == Pauli::X) return native({wire_of_[q]}, "X", depth);
      if (letters[0] == Pauli::Xp) return measure_z_wire(wire_of_[q], depth);
      const auto pre = to_x(letters[0]);
      apply_gates(q, pre, depth + 1);
      const Parity p = native({wire_of_[q]}, "X", depth + 1);
      apply_gates(q, inverse(pre), depth + 1);
      return p;
    }
    if (qs.size() != 2) {
      throw CompileError("strict mode measures Pauli words of weight at most 2, got weight " +
                         std::to_string(qs.size()));
    }
    if ((letters[0] == Pauli::X && letters[1] == Pauli::Xp) || (letters[0] == Pauli::Xp && letters[1] == Pauli::X)) {
      PauliString local(letters);
      return native({wire_of_[qs[0]], wire_of_[qs[1]]}, Observable::from_pauli(local), depth);
    }
    auto pre_a = to_x(letters[0]);
    auto pre_b = to_z(letters[1]);
    auto alt_a = to_z(letters[0]);
    auto alt_b = to_x(letters[1]);
    bool x_first = true;
    if (cost(alt_a) + cost(alt_b) < cost(pre_a) + cost(pre_b)) {
      pre_a = std::move(alt_a);
      pre_b = std::move(alt_b);
      x_first = false;
    }
    apply_gates(qs[0], pre_a, depth + 1);
    apply_gates(qs[1], pre_b, depth + 1);
    const Parity p = native({wire_of_[qs[0]], wire_of_[qs[1]]}, x_first ? "X Xp" : "Xp X", depth + 1);
    apply_gates(qs[0], inverse(pre_a), depth + 1);
    apply_gates(qs[1], inverse(pre_b), depth + 1);
    return p;
  }

  /// sigma H: X on a |0> ancilla, X⊗X' on (qubit, ancilla), X' on the qubit.
  void h(std::size_t q, int depth) {
    if (depth > kMaxRewriteDepth) throw InternalError("measurement rewrite exceeded the depth bound");
    const int w = wire_of_[q];
    const int anc = allocate('0');
    const Parity j = native({anc}, "X", depth);
    const Parity k = native({w, anc}, "X Xp", depth);
    const Parity l = measure_z_wire(w, depth);
    discard(w, Observable::parse_pauli("Xp"), l);
    wire_of_[q] = anc;
    frame(anc, Pauli::X, k);
    frame(anc, Pauli::Xp, j ^ l);
  }

  void t(std::size_t q, int depth) {
    if (depth > kMaxRewriteDepth) throw InternalError("measurement rewrite exceeded the depth bound");
    Parity j, k, l;
    int w;
    int anc;
    if (strict()) {
      h(q, depth);
      w = wire_of_[q];
      anc = allocate('0');
      j = native({anc}, "X", depth);
      k = native({w, anc}, "X Xp", depth);
      l = native({w}, Observable::g(), depth);
      discard(w, Observable::g(), l);
    } else {
      w = wire_of_[q];
      anc = allocate('0');
      j = native({anc}, "X", depth);
      k = native({w, anc}, "Xp Xp", depth);
      l = native({w}, Observable::t_conjugated_x(), depth);
      discard(w, Observable::t_conjugated_x(), l);
    }
    wire_of_[q] = anc;
    frame(anc, Pauli::Xp, j ^ l);
    frame(anc, Pauli::X, k);
  }

  void repeat_t(std::size_t q, int times, int depth) {
    for (int i = 0; i < times; ++i) t(q, depth);
  }

  void g(std::size_t q) {
    if (strict()) {
      // G = S H S^dagger up to phase.
      repeat_t(q, 6, 0);
      h(q, 0);
      repeat_t(q, 2, 0);
      return;
    }
    const int w = wire_of_[q];
    const int anc = allocate('+');
    const Parity j = native({anc}, "Xp", 0);
    const Parity k = native({w, anc}, "Xp Xpp", 0);
    const Parity l = native({w}, "Xpp", 0);
    discard(w, Observable::parse_pauli("Xpp"), l);
    wire_of_[q] = anc;
    frame(anc, Pauli::Xp, k);
    frame(anc, Pauli::Xpp, j ^ l);
  }

  /// Ancilla between control and target: X(a), X'⊗X(a, t), X'⊗X(c, a), X'(a).
  void cnot(std::size_t c, std::size_t t, int depth) {
    const int wc = wire_of_[c];
    const int wt = wire_of_[t];
    const int anc = allocate('0');
    const Parity j = native({anc}, "X", depth);
    const Parity k = native({anc, wt}, "Xp X", depth);
    const Parity l = native({wc, anc}, "Xp X", depth);
    const Parity m = measure_z_wire(anc, depth);
    discard(anc, Observable::parse_pauli("Xp"), m);
    frame(wc, Pauli::Xp, m ^ k);
    frame(wt, Pauli::X, l ^ j);
  }

  /// CH = (S H T) CNOT (T^dagger H S^dagger) on the target, time order right to left.
  void ch(std::size_t c, std::size_t tq) {
    repeat_t(tq, 6, 0);
    h(tq, 0);
    repeat_t(tq, 7, 0);
    cnot(c, tq, 0);
    repeat_t(tq, 1, 0);
    h(tq, 0);
    repeat_t(tq, 2, 0);
  }

  MeasurementProgram prog_;
  std::vector<int> wire_of_;
  std::vector<bool> alive_;
};

}  // namespace detail

/// Lowers a circuit to a measurement-only program. Extended mode may measure
/// any Pauli word plus T^-1 X T; strict mode uses only X, the G family and
/// X⊗X' on ordered pairs.
inline MeasurementProgram compile(const Circuit& circuit, PrimitiveMode mode = PrimitiveMode::Extended) {
  detail::Lowering low(circuit.num_qubits(), mode);
  for (const auto& op : circuit.ops()) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      low.gate(*g);
    } else if (const auto* m = std::get_if<MeasureOp>(&op)) {
      low.measure(*m);
    } else {
      low.prepare(std::get<PrepareOp>(op));
    }
  }
  return low.finish();
}

}  // namespace mbq
