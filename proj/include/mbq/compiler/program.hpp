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
#include <cstdio>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mbq/observable.hpp"
#include "mbq/pauli.hpp"

namespace mbq {

enum class PrimitiveMode { Extended, Strict };

inline std::string_view mode_name(PrimitiveMode m) { return m == PrimitiveMode::Strict ? "strict" : "extended"; }

inline std::optional<PrimitiveMode> mode_from_name(std::string_view s) {
  if (s == "strict") return PrimitiveMode::Strict;
  if (s == "extended") return PrimitiveMode::Extended;
  return std::nullopt;
}

/// Fresh ancilla wire in |0> or |+>.
struct AllocateInstr {
  int wire;
  char basis;
};

/// Measures `observable` (local to `wires`, in order) and stores the ideal
/// eigenvalue in register `reg`. At run time the executor measures the
/// frame-conjugated observable instead.
struct MeasureInstr {
  std::vector<int> wires;
  Observable observable;
  int reg;
  std::string family;
  int depth;
};

/// Left-multiplies `pauli` onto the frame of `wire` when the parity of the
/// listed registers (bit of -1 is 1), xor `invert`, is 1. With no registers
/// and invert set the update is unconditional.
struct FrameInstr {
  int wire;
  Pauli pauli;
  std::vector<int> regs;
  bool invert;
};

/// Removes `wire`, which must be in the eigenstate of the one-qubit `basis`
/// whose eigenvalue is the register parity (as for FrameInstr).
struct DiscardInstr {
  int wire;
  Observable basis;
  std::vector<int> regs;
  bool invert;
};

/// Circuit-level measurement result number `index`.
struct RecordInstr {
  int index;
  std::vector<int> regs;
  bool invert;
};

using Instruction = std::variant<AllocateInstr, MeasureInstr, FrameInstr, DiscardInstr, RecordInstr>;

struct MeasurementProgram {
  std::size_t n_logical = 0;
  PrimitiveMode mode = PrimitiveMode::Extended;
  std::size_t n_wires = 0;
  std::size_t n_registers = 0;
  std::size_t n_records = 0;
  std::size_t ancillas = 0;
  std::size_t gadget_expansions = 0;
  std::vector<Instruction> instructions;
  std::vector<int> output_wires;

  std::size_t measurement_count() const {
    std::size_t c = 0;
    for (const auto& in : instructions) c += std::holds_alternative<MeasureInstr>(in);
    return c;
  }
  int max_depth() const {
    int d = 0;
    for (const auto& in : instructions) {
      if (const auto* m = std::get_if<MeasureInstr>(&in)) d = std::max(d, m->depth);
    }
    return d;
  }
};

/// Strict primitive family of a local observable: "X", "G" (either sign of
/// (X' +- X'')/sqrt(2)) or "XXp" (X on one wire, X' on the other).
inline std::optional<std::string> strict_family(const Observable& local) {
  const auto terms = local.terms();
  if (local.num_qubits() == 1) {
    if (terms.size() == 1 && terms[0].pauli[0] == Pauli::X) return "X";
    if (terms.size() == 2) {
      const bool letters = (terms[0].pauli[0] == Pauli::Xp && terms[1].pauli[0] == Pauli::Xpp) ||
                           (terms[0].pauli[0] == Pauli::Xpp && terms[1].pauli[0] == Pauli::Xp);
      const bool weights = std::abs(std::abs(terms[0].coeff) - kSqrtHalf) < 1e-12 &&
                           std::abs(std::abs(terms[1].coeff) - kSqrtHalf) < 1e-12;
      if (letters && weights) return "G";
    }
    return std::nullopt;
  }
  if (local.num_qubits() == 2 && terms.size() == 1) {
    const Pauli a = terms[0].pauli[0];
    const Pauli b = terms[0].pauli[1];
    if ((a == Pauli::X && b == Pauli::Xp) || (a == Pauli::Xp && b == Pauli::X)) return "XXp";
  }
  return std::nullopt;
}

/// Checks every measurement of a strict program against the primitive set.
inline void validate_strict(const MeasurementProgram& program) {
  for (const auto& in : program.instructions) {
    if (const auto* m = std::get_if<MeasureInstr>(&in)) {
      if (!strict_family(m->observable)) {
        throw InternalError("non-primitive measurement " + m->observable.to_string() + " in strict program");
      }
    }
  }
}

/// Doubles rounded to 12 significant digits for stable text output.
inline double round12(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::stod(buf);
  return r == 0.0 ? 0.0 : r;
}

inline nlohmann::json observable_json(const Observable& obs) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : obs.terms()) terms.push_back({round12(t.coeff), t.pauli.letters_string()});
  return terms;
}

inline nlohmann::json instruction_json(const Instruction& in) {
  using nlohmann::json;
  return std::visit(
      [](const auto& i) -> json {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, AllocateInstr>) {
          return {{"op", "allocate"}, {"wire", i.wire}, {"basis", std::string(1, i.basis)}};
        } else if constexpr (std::is_same_v<T, MeasureInstr>) {
          return {{"op", "measure"},       {"wires", i.wires}, {"observable", observable_json(i.observable)},
                  {"reg", i.reg},          {"family", i.family}, {"depth", i.depth}};
        } else if constexpr (std::is_same_v<T, FrameInstr>) {
          return {{"op", "frame"},
                  {"wire", i.wire},
                  {"pauli", std::string(pauli_name(i.pauli))},
                  {"regs", i.regs},
                  {"invert", i.invert}};
        } else if constexpr (std::is_same_v<T, DiscardInstr>) {
          return {{"op", "discard"},
                  {"wire", i.wire},
                  {"basis", observable_json(i.basis)},
                  {"regs", i.regs},
                  {"invert", i.invert}};
        } else {
          return {{"op", "record"}, {"index", i.index}, {"regs", i.regs}, {"invert", i.invert}};
        }
      },
      in);
}

/// One JSON object per line: a header, then the instructions.
inline std::string program_jsonl(const MeasurementProgram& p) {
  nlohmann::json header = {{"type", "program"},
                           {"logical_qubits", p.n_logical},
                           {"mode", std::string(mode_name(p.mode))},
                           {"wires", p.n_wires},
                           {"registers", p.n_registers},
                           {"records", p.n_records},
                           {"ancillas", p.ancillas},
                           {"gadget_expansions", p.gadget_expansions},
                           {"measurements", p.measurement_count()},
                           {"max_depth", p.max_depth()},
                           {"output_wires", p.output_wires}};
  std::string out = header.dump() + "\n";
  for (const auto& in : p.instructions) out += instruction_json(in).dump() + "\n";
  return out;
}

}  // namespace mbq
