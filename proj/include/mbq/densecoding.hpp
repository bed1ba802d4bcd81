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
#include <string>
#include <utility>
#include <vector>

#include "mbq/gates.hpp"
#include "mbq/rng.hpp"
#include "mbq/statevec.hpp"
#include "mbq/strategy.hpp"

// Two-qubit dealer: qubit 0 is A (the sender's wire carrying U), qubit 1 is B.

namespace mbq {

enum class Tactic { I, X, Xp, Xpp };

inline constexpr std::array<Tactic, 4> kAllTactics = {Tactic::I, Tactic::X, Tactic::Xp, Tactic::Xpp};

struct TacticsChoice {
  Tactic label;
  std::array<int, 2> bits;
};

inline std::string_view tactic_name(Tactic t) {
  switch (t) {
    case Tactic::I: return "I";
    case Tactic::X: return "X";
    case Tactic::Xp: return "Xp";
    case Tactic::Xpp: return "Xpp";
  }
  return "?";
}

inline TacticsChoice tactics_choice(Tactic t) {
  switch (t) {
    case Tactic::I: return {t, {0, 0}};
    case Tactic::X: return {t, {0, 1}};
    case Tactic::Xp: return {t, {1, 0}};
    case Tactic::Xpp: return {t, {1, 1}};
  }
  throw InputError("unknown tactic");
}

inline TacticsChoice tactics_for_bits(std::array<int, 2> bits) {
  for (Tactic t : kAllTactics) {
    if (tactics_choice(t).bits == bits) return tactics_choice(t);
  }
  throw InputError("bits must be 0 or 1");
}

/// (strategy, alpha) whose U_{z,alpha} equals i times the Pauli (I for alpha = 0).
inline std::pair<Strategy, double> tactic_parameters(Tactic t) {
  switch (t) {
    case Tactic::I: return {Strategy::at(0.0), 0.0};
    case Tactic::X: return {Strategy::at(1.0), kPi / 2};
    case Tactic::Xp: return {Strategy::at(0.0), kPi / 2};
    case Tactic::Xpp: return {Strategy::at(cplx{0.0, 1.0}), kPi / 2};
  }
  throw InputError("unknown tactic");
}

/// States after each stage of the circuit: input |0>_A|+>_B, CNOT from B to
/// A, U on A, CNOT from A to B, and the primed meter rotation (H on A).
inline std::vector<StateVector> dealer_trace(const Strategy& s, double alpha) {
  std::vector<StateVector> trace;
  StateVector st = StateVector::basis(1, "0").with_qubit('+');
  trace.push_back(st);
  st.apply_inplace(named_gate(Gate::CNOT), {1, 0});
  trace.push_back(st);
  st.apply_inplace(u_z_alpha(s, alpha), {0});
  trace.push_back(st);
  st.apply_inplace(named_gate(Gate::CNOT), {0, 1});
  trace.push_back(st);
  st.apply_inplace(named_gate(Gate::H), {0});
  trace.push_back(st);
  return trace;
}

/// Dealer output in the meters' bases (A primed, B computational).
inline StateVector dealer_state(const Strategy& s, double alpha) { return dealer_trace(s, alpha).back(); }

/// The superposition as printed:
/// cos a |00> + i sin a (E_x |01> + E_z |10> + E_y |11>).
inline StateVector dealer_superposition(const Strategy& s, double alpha) {
  const auto e = bloch_vector(s);
  const cplx i{0.0, 1.0};
  const double c = std::cos(alpha), sn = std::sin(alpha);
  return StateVector::from_amplitudes({cplx{c, 0.0}, i * sn * e[0], i * sn * e[2], i * sn * e[1]});
}

struct EncodeDecodeResult {
  std::array<int, 2> decoded;
  TacticsChoice choice;
  std::vector<StateVector> trace;
};

/// Sends two bits through the dealer circuit and reads both meters.
inline EncodeDecodeResult encode_decode(std::array<int, 2> bits, Rng& rng) {
  const TacticsChoice choice = tactics_for_bits(bits);
  const auto [s, alpha] = tactic_parameters(choice.label);
  auto trace = dealer_trace(s, alpha);
  StateVector st = trace.back();
  std::array<int, 2> decoded{};
  for (std::size_t q = 0; q < 2; ++q) {
    const auto out = measure_inplace(st, Observable::from_pauli(PauliString::single(2, q, Pauli::Xp)), rng);
    decoded[q] = outcome_bit(out.eigenvalue);
  }
  trace.push_back(st);
  return EncodeDecodeResult{decoded, choice, std::move(trace)};
}

/// Meters replaced by controlled-H (control B, target A), then G on B.
inline StateVector polarization_state(const Strategy& s, double alpha) {
  StateVector st = dealer_state(s, alpha);
  st.apply_inplace(named_gate(Gate::CH), {1, 0});
  st.apply_inplace(named_gate(Gate::G), {1});
  return st;
}

inline std::string_view polarization_label(int bit) { return bit ? "demand" : "supply"; }

struct LabeledAmplitude {
  std::array<std::string_view, 2> labels;  // A, B
  cplx amplitude;
};

/// Basis amplitudes of a two-qubit state with market-polarization labels.
inline std::vector<LabeledAmplitude> polarization_labels(const StateVector& st) {
  if (st.num_qubits() != 2) throw InputError("polarization labels need a two-qubit state");
  std::vector<LabeledAmplitude> out;
  for (std::size_t i = 0; i < 4; ++i) {
    out.push_back({{polarization_label(static_cast<int>(i >> 1)), polarization_label(static_cast<int>(i & 1U))},
                   st[i]});
  }
  return out;
}

}  // namespace mbq
