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
#include <span>
#include <vector>

#include "mbq/clifford.hpp"
#include "mbq/pauli.hpp"
#include "mbq/rng.hpp"
#include "mbq/statevec.hpp"

namespace mbq {

/// Byproduct accumulated classically instead of being applied. The physical
/// state equals element() times the ideal state.
class PauliFrame {
 public:
  explicit PauliFrame(std::size_t n) : element_(n) {}
  explicit PauliFrame(PauliString element) : element_(std::move(element)) {}

  const PauliString& element() const noexcept { return element_; }
  std::size_t size() const noexcept { return element_.size(); }

  /// Left-multiplies a fresh byproduct onto the frame.
  PauliFrame updated(const PauliString& byproduct) const {
    if (byproduct.size() != element_.size()) throw InputError("byproduct width does not match the frame");
    return PauliFrame(byproduct * element_);
  }

  /// Moves the frame past a gate: F -> U F U^dagger, so U F = F' U.
  PauliFrame pushed_through(Clifford gate, std::span<const std::size_t> targets) const {
    return PauliFrame(conjugate_by(element_, gate, targets));
  }

  PauliFrame pushed_through(Clifford gate, std::initializer_list<std::size_t> targets) const {
    return pushed_through(gate, std::span<const std::size_t>(targets.begin(), targets.size()));
  }

  /// F|psi>, i.e. the physical state for an ideal |psi>; for a Hermitian frame
  /// the same call undoes it.
  StateVector apply_to(StateVector state) const {
    state.apply_pauli_inplace(element_);
    return state;
  }

  friend bool operator==(const PauliFrame&, const PauliFrame&) = default;

 private:
  PauliString element_;
};

inline PauliFrame frame_update(const PauliFrame& frame, const PauliString& byproduct) {
  return frame.updated(byproduct);
}

inline PauliFrame push_through(const PauliFrame& frame, Clifford gate, std::span<const std::size_t> targets) {
  return frame.pushed_through(gate, targets);
}

// ---------------------------------------------------------------------------
// Words over {H, X, X', X'', I}

enum class WordSymbol { I, X, Xp, Xpp, H };

/// phase * pauli * H^with_h, equal to the matrix product of the word.
struct ReducedWord {
  Pauli pauli = Pauli::I;
  bool with_h = false;
  cplx phase{1.0, 0.0};
};

/// Canonical form of a product of single-qubit tactics, read left to right
/// as a matrix product. An even number of H's reduces to a Pauli.
inline ReducedWord reduce_word(std::span<const WordSymbol> word) {
  if (word.empty()) throw InputError("cannot reduce an empty word");
  PauliString acc(1);
  bool h = false;
  // H P H = P with X <-> X' exchanged and X'' negated.
  auto through_h = [](Pauli p) -> PauliString {
    switch (p) {
      case Pauli::X: return PauliString({Pauli::Xp});
      case Pauli::Xp: return PauliString({Pauli::X});
      case Pauli::Xpp: return PauliString({Pauli::Xpp}, 2);
      case Pauli::I: break;
    }
    return PauliString(1);
  };
  for (WordSymbol s : word) {
    if (s == WordSymbol::H) {
      h = !h;
      continue;
    }
    const Pauli p = static_cast<Pauli>(static_cast<int>(s));
    // acc H^h p = acc (H^h p H^h) H^h
    acc = acc * (h ? through_h(p) : PauliString({p}));
  }
  return ReducedWord{acc[0], h, acc.phase_value()};
}

inline ReducedWord reduce_word(std::initializer_list<WordSymbol> word) {
  return reduce_word(std::span<const WordSymbol>(word.begin(), word.size()));
}

// ---------------------------------------------------------------------------
// Random walk over the Pauli vertices

struct WalkRecord {
  std::size_t steps = 0;
  /// Vertices visited, starting with the start vertex; size() == steps + 1.
  std::vector<Pauli> trajectory;
  /// Byproduct drawn at each step.
  std::vector<Pauli> labels;
  Pauli terminal = Pauli::I;
};

enum class WalkParity { Any, Even };

/// Walks from `start` by multiplying with a uniformly drawn Pauli (one
/// sigma-gadget byproduct per step) until the vertex equals `target`. With
/// WalkParity::Even the walk stops only after an even number of steps.
/// Throws ExhaustionError after `max_steps` steps.
inline WalkRecord random_walk_cleanup(Pauli start, Pauli target, Rng& rng, std::size_t max_steps = 200,
                                      WalkParity parity = WalkParity::Any) {
  if (max_steps < 1) throw InputError("max_steps must be at least 1");
  WalkRecord rec;
  rec.trajectory.push_back(start);
  Pauli cur = start;
  while (rec.steps < max_steps) {
    const Pauli label = kAllPaulis[rng.below(4)];
    cur = product_letter(cur, label);
    ++rec.steps;
    rec.labels.push_back(label);
    rec.trajectory.push_back(cur);
    if (cur == target && (parity == WalkParity::Any || rec.steps % 2 == 0)) {
      rec.terminal = cur;
      return rec;
    }
  }
  const double per_step = parity == WalkParity::Any ? max_steps : std::floor(max_steps / 2.0);
  throw ExhaustionError(max_steps, std::pow(0.75, per_step));
}

}  // namespace mbq
