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
#include <array>
#include <bit>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbq/core.hpp"
#include "mbq/gates.hpp"
#include "mbq/observable.hpp"
#include "mbq/pauli.hpp"
#include "mbq/rng.hpp"

namespace mbq {

/// Normalized pure state of n qubits. Amplitude index is the big-endian
/// bitstring: qubit 0 is the most significant bit (the top wire).
class StateVector {
 public:
  /// |bits>, e.g. basis(2, "10").
  static StateVector basis(std::size_t n, std::string_view bits) {
    check_size(n);
    if (bits.size() != n) {
      throw InputError("basis string has length " + std::to_string(bits.size()) + ", expected " +
                       std::to_string(n));
    }
    std::size_t index = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') throw InputError("basis string must contain only 0 and 1");
      index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    StateVector s(n);
    s.amps_[index] = 1.0;
    return s;
  }

  static StateVector zeros(std::size_t n) { return basis(n, std::string(n, '0')); }

  /// Normalizes the given amplitudes; throws if they are all zero.
  static StateVector from_amplitudes(std::vector<cplx> amps) {
    const std::size_t len = amps.size();
    if (len < 2 || !std::has_single_bit(len)) throw InputError("amplitude count must be a power of two >= 2");
    const std::size_t n = static_cast<std::size_t>(std::countr_zero(len));
    check_size(n);
    double norm2 = 0.0;
    for (const auto& a : amps) norm2 += std::norm(a);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw InputError("amplitudes have zero or non-finite norm");
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) a *= inv;
    StateVector s(n);
    s.amps_ = std::move(amps);
    return s;
  }

  /// Gaussian-random amplitudes, normalized (Haar-distributed).
  static StateVector random(std::size_t n, Rng& rng) {
    std::vector<cplx> amps(std::size_t{1} << n);
    for (auto& a : amps) a = cplx{gaussian(rng), gaussian(rng)};
    return from_amplitudes(std::move(amps));
  }

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  cplx operator[](std::size_t index) const { return amps_.at(index); }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  /// <this|other>
  cplx inner(const StateVector& other) const {
    require_same_size(other);
    cplx s{0, 0};
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

  std::size_t mask(std::size_t qubit) const { return std::size_t{1} << (n_ - 1 - qubit); }

  /// Applies `gate` on `targets` (targets[0] is the gate's most significant qubit).
  void apply_inplace(const UnitaryMatrix& gate, std::span<const std::size_t> targets) {
    const std::size_t k = targets.size();
    if (k == 0 || gate.dim() != (std::size_t{1} << k)) {
      throw InputError("gate dimension " + std::to_string(gate.dim()) + " does not match " +
                       std::to_string(k) + " target(s)");
    }
    check_targets(targets);
    std::vector<std::size_t> masks(k);
    std::size_t all = 0;
    for (std::size_t t = 0; t < k; ++t) {
      masks[t] = mask(targets[t]);
      all |= masks[t];
    }
    const std::size_t d = gate.dim();
    std::vector<std::size_t> offsets(d);
    for (std::size_t local = 0; local < d; ++local) {
      std::size_t off = 0;
      for (std::size_t t = 0; t < k; ++t) {
        if ((local >> (k - 1 - t)) & 1U) off |= masks[t];
      }
      offsets[local] = off;
    }
    const Matrix& m = gate.matrix();
    std::vector<cplx> in(d), out(d);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
      if (base & all) continue;
      for (std::size_t r = 0; r < d; ++r) in[r] = amps_[base | offsets[r]];
      for (std::size_t r = 0; r < d; ++r) {
        cplx acc{0, 0};
        for (std::size_t c = 0; c < d; ++c) acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
        out[r] = acc;
      }
      for (std::size_t r = 0; r < d; ++r) amps_[base | offsets[r]] = out[r];
    }
  }

  void apply_inplace(const UnitaryMatrix& gate, std::initializer_list<std::size_t> targets) {
    apply_inplace(gate, std::span<const std::size_t>(targets.begin(), targets.size()));
  }

  /// P|psi> for a full-width Pauli word (phase included).
  void apply_pauli_inplace(const PauliString& p) {
    if (p.size() != n_) throw InputError("Pauli word width does not match the state");
    std::vector<cplx> out(amps_.size());
    apply_pauli_to(p, amps_, out);
    amps_ = std::move(out);
  }

  /// Appends a fresh qubit (index n) in one of |0>, |1>, |+>, |->.
  StateVector with_qubit(char basis) const {
    check_size(n_ + 1);
    std::array<cplx, 2> v;
    switch (basis) {
      case '0': v = {1.0, 0.0}; break;
      case '1': v = {0.0, 1.0}; break;
      case '+': v = {kSqrtHalf, kSqrtHalf}; break;
      case '-': v = {kSqrtHalf, -kSqrtHalf}; break;
      default: throw InputError(std::string("unknown basis state '") + basis + "'");
    }
    StateVector s(n_ + 1);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      s.amps_[2 * i] = amps_[i] * v[0];
      s.amps_[2 * i + 1] = amps_[i] * v[1];
    }
    return s;
  }

  /// Projects `qubit` onto `v` and drops it. Throws InternalError unless the
  /// qubit was in state v up to 1 - tol, i.e. disentangled from the rest.
  StateVector without_qubit(std::size_t qubit, const std::array<cplx, 2>& v, double tol = kNormTolerance) const {
    if (qubit >= n_) throw InputError("qubit index out of range");
    if (n_ == 1) throw InputError("cannot remove the last qubit");
    StateVector s(n_ - 1);
    const std::size_t m = mask(qubit);
    const std::size_t low = m - 1;
    double weight = 0.0;
    for (std::size_t j = 0; j < s.amps_.size(); ++j) {
      const std::size_t i0 = ((j & ~low) << 1) | (j & low);
      const cplx a = std::conj(v[0]) * amps_[i0] + std::conj(v[1]) * amps_[i0 | m];
      s.amps_[j] = a;
      weight += std::norm(a);
    }
    if (weight < 1.0 - tol) {
      throw InternalError("qubit " + std::to_string(qubit) + " is not disentangled (overlap " +
                          std::to_string(weight) + ")");
    }
    const double inv = 1.0 / std::sqrt(weight);
    for (auto& a : s.amps_) a *= inv;
    return s;
  }

  /// Relabels qubits: qubit k of the result is qubit order[k] of this state.
  StateVector permuted(std::span<const std::size_t> order) const {
    if (order.size() != n_) throw InputError("permutation has the wrong length");
    std::vector<bool> seen(n_, false);
    for (std::size_t q : order) {
      if (q >= n_ || seen[q]) throw InputError("invalid qubit permutation");
      seen[q] = true;
    }
    StateVector s(n_);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      std::size_t j = 0;
      for (std::size_t k = 0; k < n_; ++k) {
        if (i & mask(order[k])) j |= s.mask(k);
      }
      s.amps_[j] = amps_[i];
    }
    return s;
  }

  /// Moves qubit `from` to position `to`, shifting the others.
  StateVector moved(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> order;
    for (std::size_t q = 0; q < n_; ++q) {
      if (q != from) order.push_back(q);
    }
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(to), from);
    return permuted(order);
  }

  StateVector tensor(const StateVector& rhs) const {
    check_size(n_ + rhs.n_);
    StateVector s(n_ + rhs.n_);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      for (std::size_t j = 0; j < rhs.amps_.size(); ++j) s.amps_[i * rhs.amps_.size() + j] = amps_[i] * rhs.amps_[j];
    }
    return s;
  }

  /// Raw access for measurement kernels; callers keep the norm at 1.
  std::vector<cplx>& mutable_amplitudes() noexcept { return amps_; }

  static void apply_pauli_to(const PauliString& p, std::span<const cplx> in, std::span<cplx> out) {
    const std::size_t n = p.size();
    std::size_t xm = 0, zm = 0, ycount = 0;
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t bit = std::size_t{1} << (n - 1 - q);
      if (x_bit(p[q])) xm |= bit;
      if (z_bit(p[q])) zm |= bit;
      if (p[q] == Pauli::Xpp) ++ycount;
    }
    static constexpr std::array<cplx, 4> powers = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    const cplx base = powers[(p.phase() + ycount) % 4];
    for (std::size_t i = 0; i < in.size(); ++i) {
      const bool neg = std::popcount(i & zm) & 1;
      out[i ^ xm] = neg ? -base * in[i] : base * in[i];
    }
  }

 private:
  explicit StateVector(std::size_t n) : n_(n), amps_(std::size_t{1} << n, cplx{0, 0}) {}

  static void check_size(std::size_t n) {
    if (n == 0) throw InputError("a state needs at least one qubit");
    if (n > kMaxQubits) {
      throw InputError("qubit count " + std::to_string(n) + " exceeds the ceiling of " + std::to_string(kMaxQubits));
    }
  }

  void check_targets(std::span<const std::size_t> targets) const {
    for (std::size_t a = 0; a < targets.size(); ++a) {
      if (targets[a] >= n_) throw InputError("target qubit " + std::to_string(targets[a]) + " out of range");
      for (std::size_t b = a + 1; b < targets.size(); ++b) {
        if (targets[a] == targets[b]) throw InputError("duplicate target qubit " + std::to_string(targets[a]));
      }
    }
  }

  void require_same_size(const StateVector& other) const {
    if (other.n_ != n_) throw InputError("states have different qubit counts");
  }

  static double gaussian(Rng& rng) {
    // Box-Muller on our own uniform draws keeps the stream platform independent.
    double u1 = rng.uniform();
    while (u1 <= 0.0) u1 = rng.uniform();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  std::size_t n_ = 0;
  std::vector<cplx> amps_;
};

struct MeasurementOutcome {
  int eigenvalue = 1;  // +1 or -1
  double probability = 0.0;
  Observable observable;
};

/// Bit carried by an outcome: b(+1) = 0, b(-1) = 1.
constexpr int outcome_bit(int eigenvalue) { return eigenvalue == 1 ? 0 : 1; }
constexpr int bit_eigenvalue(int bit) { return bit ? -1 : 1; }

inline StateVector new_basis_state(std::size_t n, std::string_view bits) { return StateVector::basis(n, bits); }

inline StateVector apply_gate(StateVector state, const UnitaryMatrix& gate, std::span<const std::size_t> targets) {
  state.apply_inplace(gate, targets);
  return state;
}

inline StateVector apply_gate(StateVector state, const UnitaryMatrix& gate, std::initializer_list<std::size_t> targets) {
  state.apply_inplace(gate, targets);
  return state;
}

inline StateVector apply_pauli(StateVector state, const PauliString& p) {
  state.apply_pauli_inplace(p);
  return state;
}

/// Born-rule projective measurement of `obs`, in place. Samples from `rng`
/// unless `forced` names the outcome; a forced outcome of (numerically) zero
/// probability is an InputError. One uniform draw is consumed per sampled
/// measurement, even when the result is certain.
inline MeasurementOutcome measure_inplace(StateVector& state, const Observable& obs, Rng& rng,
                                          std::optional<int> forced = std::nullopt) {
  if (obs.num_qubits() != state.num_qubits()) throw InputError("observable width does not match the state");
  if (forced && *forced != 1 && *forced != -1) throw InputError("forced outcome must be +1 or -1");
  auto& amps = state.mutable_amplitudes();
  std::vector<cplx> image(amps.size(), cplx{0, 0});
  std::vector<cplx> scratch(amps.size());
  for (const auto& term : obs.terms()) {
    StateVector::apply_pauli_to(term.pauli, amps, scratch);
    for (std::size_t i = 0; i < amps.size(); ++i) image[i] += term.coeff * scratch[i];
  }
  cplx expect{0, 0};
  for (std::size_t i = 0; i < amps.size(); ++i) expect += std::conj(amps[i]) * image[i];
  const double p_plus = std::clamp(0.5 * (1.0 + expect.real()), 0.0, 1.0);
  const double p_minus = 1.0 - p_plus;

  int o;
  if (forced) {
    o = *forced;
    if ((o == 1 ? p_plus : p_minus) < kZeroBranch) {
      throw InputError("forced outcome " + std::to_string(o) + " has zero probability for " + obs.to_string());
    }
  } else {
    const double u = rng.uniform();
    if (p_plus < kZeroBranch) {
      o = -1;
    } else if (p_minus < kZeroBranch) {
      o = 1;
    } else {
      o = u < p_plus ? 1 : -1;
    }
  }
  const double p = o == 1 ? p_plus : p_minus;
  if (p < kZeroBranch) throw InternalError("sampled a zero-probability measurement branch");
  const double scale = 0.5 / std::sqrt(p);
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = scale * (amps[i] + static_cast<double>(o) * image[i]);
  return MeasurementOutcome{o, p, obs};
}

inline std::pair<MeasurementOutcome, StateVector> measure(StateVector state, const Observable& obs, Rng& rng,
                                                          std::optional<int> forced = std::nullopt) {
  auto outcome = measure_inplace(state, obs, rng, forced);
  return {std::move(outcome), std::move(state)};
}

inline std::pair<MeasurementOutcome, StateVector> measure_pauli(StateVector state, const PauliString& observable,
                                                                Rng& rng, std::optional<int> forced = std::nullopt) {
  return measure(std::move(state), Observable::from_pauli(observable), rng, forced);
}

/// Returns <a|b>/|<a|b>| when |<a|b>| >= 1 - tol, otherwise nullopt.
inline std::optional<cplx> equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  if (a.num_qubits() != b.num_qubits()) throw InputError("states have different qubit counts");
  const cplx ov = a.inner(b);
  const double mag = std::abs(ov);
  if (mag < 1.0 - tol) return std::nullopt;
  return ov / mag;
}

/// |<a|b>|^2
inline double fidelity(const StateVector& a, const StateVector& b) { return std::norm(a.inner(b)); }

}  // namespace mbq
