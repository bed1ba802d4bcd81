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
#include <string_view>
#include <utility>
#include <vector>

#include "mbq/gates.hpp"
#include "mbq/observable.hpp"
#include "mbq/pauli.hpp"
#include "mbq/rng.hpp"
#include "mbq/statevec.hpp"

namespace mbq {

// Measurement-only implementations of single- and two-qubit tactics. Each
// gadget appends one ancilla, runs a fixed sequence of Pauli (or G-type)
// measurements, and leaves the logical state equal to B * U * input where U
// is the target unitary and B a Pauli byproduct fixed by the outcomes.
//
// Outcome exponents use b(o) = (1 - o) / 2: a factor sigma^{o} in a closed
// form means "apply sigma when o = -1", and a product o1*o2 in an exponent is
// the XOR of the bits.

enum class GadgetKind {
  SigmaH,          // X(anc), X⊗X'(q, anc), X'(q)          -> sigma H
  SigmaHSwapped,   // X'(anc), X'⊗X(q, anc), X(q)          -> sigma H
  Sigma,           // X'(anc), X⊗X(q, anc), X'(q)          -> sigma
  SigmaXPrepared,  // X(anc), X'⊗X'(q, anc), X(q)          -> sigma
  SigmaHPrefixed,  // H(q), X(anc), X⊗X'(q, anc), X'(q)    -> sigma
  SigmaT,          // X(anc), X'⊗X'(q, anc), T^-1 X T(q)   -> sigma T
  SigmaTGForm,     // H(q), X(anc), X⊗X'(q, anc), G(q)     -> sigma T
  SigmaG,          // X'(anc), X'⊗X''(q, anc), X''(q)      -> sigma G
  Cnot,            // X(a), X'⊗X(a, t), X'⊗X(c, a), X'(a)  -> sigma CNOT
};

inline constexpr std::array<GadgetKind, 9> kAllGadgetKinds = {
    GadgetKind::SigmaH,         GadgetKind::SigmaHSwapped, GadgetKind::Sigma,
    GadgetKind::SigmaXPrepared, GadgetKind::SigmaHPrefixed, GadgetKind::SigmaT,
    GadgetKind::SigmaTGForm,    GadgetKind::SigmaG,        GadgetKind::Cnot};

inline std::string_view gadget_name(GadgetKind k) {
  switch (k) {
    case GadgetKind::SigmaH: return "sigma_h";
    case GadgetKind::SigmaHSwapped: return "sigma_h_swapped";
    case GadgetKind::Sigma: return "sigma";
    case GadgetKind::SigmaXPrepared: return "sigma_x_prepared";
    case GadgetKind::SigmaHPrefixed: return "sigma_h_prefixed";
    case GadgetKind::SigmaT: return "sigma_t";
    case GadgetKind::SigmaTGForm: return "sigma_t_g_form";
    case GadgetKind::SigmaG: return "sigma_g";
    case GadgetKind::Cnot: return "cnot";
  }
  return "?";
}

inline std::size_t gadget_measurement_count(GadgetKind k) { return k == GadgetKind::Cnot ? 4 : 3; }
inline std::size_t gadget_logical_qubits(GadgetKind k) { return k == GadgetKind::Cnot ? 2 : 1; }

inline Gate gadget_target_gate(GadgetKind k) {
  switch (k) {
    case GadgetKind::SigmaH:
    case GadgetKind::SigmaHSwapped: return Gate::H;
    case GadgetKind::Sigma:
    case GadgetKind::SigmaXPrepared:
    case GadgetKind::SigmaHPrefixed: return Gate::I;
    case GadgetKind::SigmaT:
    case GadgetKind::SigmaTGForm: return Gate::T;
    case GadgetKind::SigmaG: return Gate::G;
    case GadgetKind::Cnot: return Gate::CNOT;
  }
  return Gate::I;
}

namespace detail {

inline PauliString pow_word(std::initializer_list<std::pair<Pauli, int>> factors) {
  PauliString out(1);
  for (auto [p, bit] : factors) {
    if (bit) out = out * PauliString({p});
  }
  return out;
}

}  // namespace detail

/// Closed-form byproduct for a gadget's outcome list, on its logical
/// qubit(s) ((control, target) for CNOT).
inline PauliString predicted_byproduct(GadgetKind kind, std::span<const int> outcomes) {
  if (outcomes.size() != gadget_measurement_count(kind)) {
    throw InputError(std::string(gadget_name(kind)) + " expects " + std::to_string(gadget_measurement_count(kind)) +
                     " outcomes, got " + std::to_string(outcomes.size()));
  }
  for (int o : outcomes) {
    if (o != 1 && o != -1) throw InputError("outcomes must be +1 or -1");
  }
  auto b = [](int o) { return outcome_bit(o); };
  const int j = outcomes[0], k = outcomes[1], l = outcomes[2];
  switch (kind) {
    case GadgetKind::SigmaH: return detail::pow_word({{Pauli::X, b(k)}, {Pauli::Xp, b(j * l)}});
    case GadgetKind::SigmaHSwapped: return detail::pow_word({{Pauli::Xp, b(k)}, {Pauli::X, b(j * l)}});
    case GadgetKind::Sigma: return detail::pow_word({{Pauli::X, b(j * l)}, {Pauli::Xp, b(k)}});
    case GadgetKind::SigmaXPrepared:
    case GadgetKind::SigmaHPrefixed:
    case GadgetKind::SigmaT:
    case GadgetKind::SigmaTGForm: return detail::pow_word({{Pauli::Xp, b(j * l)}, {Pauli::X, b(k)}});
    case GadgetKind::SigmaG: return detail::pow_word({{Pauli::Xp, b(k)}, {Pauli::Xpp, b(j * l)}});
    case GadgetKind::Cnot: {
      const int m = outcomes[3];
      return PauliString({b(m * k) ? Pauli::Xp : Pauli::I, b(l * j) ? Pauli::X : Pauli::I});
    }
  }
  throw InputError("unknown gadget kind");
}

struct GadgetResult {
  GadgetKind kind;
  std::vector<MeasurementOutcome> outcomes;
  PauliString byproduct;  // on the logical qubit(s)
  StateVector post_state;
  /// b(eigenvalue) of each discarded wire in its final measurement basis.
  std::string ancilla_residue;
  std::vector<Observable> residue_basis;

  std::vector<int> eigenvalues() const {
    std::vector<int> v;
    for (const auto& o : outcomes) v.push_back(o.eigenvalue);
    return v;
  }
};

namespace detail {

/// Measurement bookkeeping shared by the gadgets.
class GadgetRun {
 public:
  GadgetRun(StateVector state, Rng& rng, std::span<const int> forced, std::size_t expected)
      : state_(std::move(state)), rng_(rng), forced_(forced) {
    if (!forced_.empty() && forced_.size() != expected) {
      throw InputError("forced outcome list must have " + std::to_string(expected) + " entries");
    }
  }

  StateVector& state() { return state_; }

  int measure(const Observable& local, std::initializer_list<std::size_t> wires) {
    const Observable obs = local.embedded(state_.num_qubits(), wires);
    std::optional<int> f;
    if (!forced_.empty()) f = forced_[outcomes_.size()];
    outcomes_.push_back(measure_inplace(state_, obs, rng_, f));
    return outcomes_.back().eigenvalue;
  }

  int measure(std::string_view pauli, std::initializer_list<std::size_t> wires) {
    return measure(Observable::parse_pauli(pauli), wires);
  }

  void apply(Gate g, std::initializer_list<std::size_t> wires) { state_.apply_inplace(named_gate(g), wires); }

  std::vector<MeasurementOutcome> take_outcomes() { return std::move(outcomes_); }

 private:
  StateVector state_;
  Rng& rng_;
  std::span<const int> forced_;
  std::vector<MeasurementOutcome> outcomes_;
};

inline void check_qubit(const StateVector& s, std::size_t q) {
  if (q >= s.num_qubits()) throw InputError("gadget target " + std::to_string(q) + " out of range");
}

/// Drops the spent input wire (in the eigenstate `eig` of `basis`) and moves
/// the ancilla, which now carries the logical state, into its place.
inline GadgetResult finish_transfer(GadgetKind kind, GadgetRun& run, std::size_t target, const Observable& basis,
                                    int eig) {
  StateVector& s = run.state();
  const std::size_t last = s.num_qubits() - 1;
  StateVector reduced = s.without_qubit(target, basis.eigenvector(eig)).moved(last - 1, target);
  auto outcomes = run.take_outcomes();
  std::vector<int> eigs;
  for (const auto& o : outcomes) eigs.push_back(o.eigenvalue);
  PauliString byproduct = predicted_byproduct(kind, eigs);
  return GadgetResult{kind,           std::move(outcomes), std::move(byproduct), std::move(reduced),
                      std::string(1, static_cast<char>('0' + outcome_bit(eig))), {basis}};
}

}  // namespace detail

/// Supply/demand orientation of the sigma-H gadget.
enum class SigmaHVariant { Standard, Swapped };

/// sigma H by measurement: X on a fresh |0> ancilla (j), X⊗X' on
/// (target, ancilla) (k), X' on the target (l). The logical state ends on the
/// ancilla, which is relabeled to `target`; byproduct X^b(k) X'^b(j*l).
inline GadgetResult gadget_sigma_h(const StateVector& state, std::size_t target, Rng& rng,
                                   std::span<const int> forced = {},
                                   SigmaHVariant variant = SigmaHVariant::Standard) {
  detail::check_qubit(state, target);
  const std::size_t anc = state.num_qubits();
  if (variant == SigmaHVariant::Standard) {
    detail::GadgetRun run(state.with_qubit('0'), rng, forced, 3);
    run.measure("X", {anc});
    run.measure("X Xp", {target, anc});
    const int l = run.measure("Xp", {target});
    return detail::finish_transfer(GadgetKind::SigmaH, run, target, Observable::parse_pauli("Xp"), l);
  }
  detail::GadgetRun run(state.with_qubit('+'), rng, forced, 3);
  run.measure("Xp", {anc});
  run.measure("Xp X", {target, anc});
  const int l = run.measure("X", {target});
  return detail::finish_transfer(GadgetKind::SigmaHSwapped, run, target, Observable::parse_pauli("X"), l);
}

/// The three wirings that implement a bare Pauli byproduct.
enum class SigmaForm { XpPrepared, XPrepared, HPrefixed };

inline GadgetResult gadget_sigma(const StateVector& state, std::size_t target, Rng& rng,
                                 std::span<const int> forced = {}, SigmaForm form = SigmaForm::XpPrepared) {
  detail::check_qubit(state, target);
  const std::size_t anc = state.num_qubits();
  switch (form) {
    case SigmaForm::XpPrepared: {
      detail::GadgetRun run(state.with_qubit('+'), rng, forced, 3);
      run.measure("Xp", {anc});
      run.measure("X X", {target, anc});
      const int l = run.measure("Xp", {target});
      return detail::finish_transfer(GadgetKind::Sigma, run, target, Observable::parse_pauli("Xp"), l);
    }
    case SigmaForm::XPrepared: {
      detail::GadgetRun run(state.with_qubit('0'), rng, forced, 3);
      run.measure("X", {anc});
      run.measure("Xp Xp", {target, anc});
      const int l = run.measure("X", {target});
      return detail::finish_transfer(GadgetKind::SigmaXPrepared, run, target, Observable::parse_pauli("X"), l);
    }
    case SigmaForm::HPrefixed: {
      detail::GadgetRun run(state.with_qubit('0'), rng, forced, 3);
      run.apply(Gate::H, {target});
      run.measure("X", {anc});
      run.measure("X Xp", {target, anc});
      const int l = run.measure("Xp", {target});
      return detail::finish_transfer(GadgetKind::SigmaHPrefixed, run, target, Observable::parse_pauli("Xp"), l);
    }
  }
  throw InputError("unknown sigma gadget form");
}

enum class SigmaTForm { Conjugated, GForm };

/// sigma T: X on the ancilla, X'⊗X' on the pair, then T^-1 X T on the input
/// wire. The G form replaces the last two steps by H, X⊗X', G; both share the
/// byproduct X'^b(j*l) X^b(k).
inline GadgetResult gadget_sigma_t(const StateVector& state, std::size_t target, Rng& rng,
                                   std::span<const int> forced = {}, SigmaTForm form = SigmaTForm::Conjugated) {
  detail::check_qubit(state, target);
  const std::size_t anc = state.num_qubits();
  detail::GadgetRun run(state.with_qubit('0'), rng, forced, 3);
  if (form == SigmaTForm::Conjugated) {
    run.measure("X", {anc});
    run.measure("Xp Xp", {target, anc});
    const int l = run.measure(Observable::t_conjugated_x(), {target});
    return detail::finish_transfer(GadgetKind::SigmaT, run, target, Observable::t_conjugated_x(), l);
  }
  run.apply(Gate::H, {target});
  run.measure("X", {anc});
  run.measure("X Xp", {target, anc});
  const int l = run.measure(Observable::g(), {target});
  return detail::finish_transfer(GadgetKind::SigmaTGForm, run, target, Observable::g(), l);
}

/// sigma-H with X -> X' -> X'' -> X relabeled: X' on a |+> ancilla,
/// X'⊗X'' on the pair, X'' on the input wire. Byproduct X'^b(k) X''^b(j*l).
inline GadgetResult gadget_sigma_g(const StateVector& state, std::size_t target, Rng& rng,
                                   std::span<const int> forced = {}) {
  detail::check_qubit(state, target);
  const std::size_t anc = state.num_qubits();
  detail::GadgetRun run(state.with_qubit('+'), rng, forced, 3);
  run.measure("Xp", {anc});
  run.measure("Xp Xpp", {target, anc});
  const int l = run.measure("Xpp", {target});
  return detail::finish_transfer(GadgetKind::SigmaG, run, target, Observable::parse_pauli("Xpp"), l);
}

/// CNOT by measurement with the ancilla between control and target:
/// X(a) -> j, X'(a)⊗X(t) -> k, X'(c)⊗X(a) -> l, X'(a) -> m.
/// Byproduct X'^b(m*k) on the control and X^b(l*j) on the target.
inline GadgetResult gadget_cnot(const StateVector& state, std::size_t control, std::size_t target, Rng& rng,
                                std::span<const int> forced = {}) {
  detail::check_qubit(state, control);
  detail::check_qubit(state, target);
  if (control == target) throw InputError("CNOT control and target must differ");
  const std::size_t anc = state.num_qubits();
  detail::GadgetRun run(state.with_qubit('0'), rng, forced, 4);
  run.measure("X", {anc});
  run.measure("Xp X", {anc, target});
  run.measure("Xp X", {control, anc});
  const int m = run.measure("Xp", {anc});
  const Observable basis = Observable::parse_pauli("Xp");
  StateVector reduced = run.state().without_qubit(anc, basis.eigenvector(m));
  auto outcomes = run.take_outcomes();
  std::vector<int> eigs;
  for (const auto& o : outcomes) eigs.push_back(o.eigenvalue);
  PauliString byproduct = predicted_byproduct(GadgetKind::Cnot, eigs);
  return GadgetResult{GadgetKind::Cnot,   std::move(outcomes), std::move(byproduct), std::move(reduced),
                      std::string(1, static_cast<char>('0' + outcome_bit(m))), {basis}};
}

/// X' on `target` read out through an auxiliary qubit: X on the auxiliary
/// (j), then X⊗X' on (auxiliary, target) (k). The reported eigenvalue is j*k
/// and the auxiliary is dropped.
inline std::pair<MeasurementOutcome, StateVector> measure_xprime_derived(const StateVector& state, std::size_t target,
                                                                         Rng& rng, std::span<const int> forced = {}) {
  detail::check_qubit(state, target);
  const std::size_t aux = state.num_qubits();
  detail::GadgetRun run(state.with_qubit('0'), rng, forced, 2);
  const int j = run.measure("X", {aux});
  const int k = run.measure("X Xp", {aux, target});
  StateVector reduced = run.state().without_qubit(aux, Observable::parse_pauli("X").eigenvector(j));
  const auto outcomes = run.take_outcomes();
  MeasurementOutcome out{j * k, outcomes[1].probability,
                         Observable::parse_pauli("Xp").embedded(state.num_qubits(), {target})};
  return {std::move(out), std::move(reduced)};
}

enum class ParityKind { XX, XpXp };

/// Same-side parity through the conjugated pair measurement:
/// X⊗X = (I⊗H)(X⊗X')(I⊗H) and X'⊗X' = (H⊗I)(X⊗X')(H⊗I).
inline std::pair<MeasurementOutcome, StateVector> measure_parity_conjugated(const StateVector& state, std::size_t a,
                                                                            std::size_t b, ParityKind kind, Rng& rng,
                                                                            std::optional<int> forced = std::nullopt) {
  detail::check_qubit(state, a);
  detail::check_qubit(state, b);
  if (a == b) throw InputError("parity measurement needs two distinct qubits");
  StateVector s = state;
  const std::size_t rotated = kind == ParityKind::XX ? b : a;
  const UnitaryMatrix h = named_gate(Gate::H);
  s.apply_inplace(h, {rotated});
  const Observable pair = Observable::parse_pauli("X Xp").embedded(s.num_qubits(), {a, b});
  MeasurementOutcome out = measure_inplace(s, pair, rng, forced);
  s.apply_inplace(h, {rotated});
  out.observable =
      Observable::parse_pauli(kind == ParityKind::XX ? "X X" : "Xp Xp").embedded(s.num_qubits(), {a, b});
  return {std::move(out), std::move(s)};
}

/// G measured through a |0> ancilla: H(a); H, G on the target; CH(a, target);
/// G, H on the target; H(a); X'(a). HGHGH = -G, so the middle block is a
/// controlled -G and the ancilla reads minus the G eigenvalue.
inline std::pair<MeasurementOutcome, StateVector> measure_g_via_hghgh(const StateVector& state, std::size_t target,
                                                                      Rng& rng,
                                                                      std::optional<int> forced = std::nullopt) {
  detail::check_qubit(state, target);
  const std::size_t anc = state.num_qubits();
  StateVector s = state.with_qubit('0');
  const UnitaryMatrix h = named_gate(Gate::H);
  const UnitaryMatrix g = named_gate(Gate::G);
  s.apply_inplace(h, {anc});
  s.apply_inplace(h, {target});
  s.apply_inplace(g, {target});
  s.apply_inplace(named_gate(Gate::CH), {anc, target});
  s.apply_inplace(g, {target});
  s.apply_inplace(h, {target});
  s.apply_inplace(h, {anc});
  const Observable z = Observable::parse_pauli("Xp");
  if (forced) forced = -*forced;
  MeasurementOutcome out = measure_inplace(s, z.embedded(s.num_qubits(), {anc}), rng, forced);
  StateVector reduced = s.without_qubit(anc, z.eigenvector(out.eigenvalue));
  out.eigenvalue = -out.eigenvalue;
  out.observable = Observable::g().embedded(state.num_qubits(), {target});
  return {std::move(out), std::move(reduced)};
}

/// |<B U psi | post>|^2 for a gadget run on `input` acting on `targets`.
inline double gadget_contract_fidelity(const GadgetResult& result, const StateVector& input,
                                       std::span<const std::size_t> targets) {
  StateVector expected = apply_gate(input, named_gate(gadget_target_gate(result.kind)),
                                    gadget_target_gate(result.kind) == Gate::CNOT ? targets : targets.first(1));
  expected.apply_pauli_inplace(result.byproduct.embedded(input.num_qubits(), targets));
  return fidelity(expected, result.post_state);
}

inline double gadget_contract_fidelity(const GadgetResult& result, const StateVector& input,
                                       std::initializer_list<std::size_t> targets) {
  return gadget_contract_fidelity(result, input, std::span<const std::size_t>(targets.begin(), targets.size()));
}

}  // namespace mbq
