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

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mbq/core.hpp"

namespace mbq {

using Matrix = Eigen::MatrixXcd;

/// Single-qubit tactics. Xp is sigma_z (= H X H) and Xpp is sigma_y (= i X Xp).
/// The numeric codes double as (x, z) bit pairs: bit 0 is x, bit 1 is z.
enum class Pauli : std::uint8_t { I = 0, X = 1, Xp = 2, Xpp = 3 };

inline constexpr std::array<Pauli, 4> kAllPaulis = {Pauli::I, Pauli::X, Pauli::Xp, Pauli::Xpp};

constexpr bool x_bit(Pauli p) { return (static_cast<std::uint8_t>(p) & 1U) != 0; }
constexpr bool z_bit(Pauli p) { return (static_cast<std::uint8_t>(p) & 2U) != 0; }
constexpr Pauli pauli_from_bits(bool x, bool z) {
  return static_cast<Pauli>((x ? 1U : 0U) | (z ? 2U : 0U));
}

/// Power of i picked up by the single-qubit product a*b.
constexpr std::uint8_t product_phase(Pauli a, Pauli b) {
  constexpr std::uint8_t table[4][4] = {
      {0, 0, 0, 0},  // I
      {0, 0, 3, 1},  // X  : X Xp = -i Xpp, X Xpp = i Xp
      {0, 1, 0, 3},  // Xp : Xp X = i Xpp,  Xp Xpp = -i X
      {0, 3, 1, 0},  // Xpp: Xpp X = -i Xp, Xpp Xp = i X
  };
  return table[static_cast<int>(a)][static_cast<int>(b)];
}

constexpr Pauli product_letter(Pauli a, Pauli b) {
  return static_cast<Pauli>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

constexpr bool anticommute(Pauli a, Pauli b) {
  return a != Pauli::I && b != Pauli::I && a != b;
}

inline std::string_view pauli_name(Pauli p) {
  switch (p) {
    case Pauli::I: return "I";
    case Pauli::X: return "X";
    case Pauli::Xp: return "Xp";
    case Pauli::Xpp: return "Xpp";
  }
  return "?";
}

inline std::string_view pauli_display(Pauli p) {
  switch (p) {
    case Pauli::I: return "I";
    case Pauli::X: return "X";
    case Pauli::Xp: return "X′";
    case Pauli::Xpp: return "X″";
  }
  return "?";
}

inline std::optional<Pauli> pauli_from_name(std::string_view s) {
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "i") return Pauli::I;
  if (t == "x") return Pauli::X;
  if (t == "xp" || t == "z") return Pauli::Xp;
  if (t == "xpp" || t == "y") return Pauli::Xpp;
  return std::nullopt;
}

inline Matrix pauli_matrix(Pauli p) {
  Matrix m = Matrix::Zero(2, 2);
  const cplx i{0.0, 1.0};
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Xp: m << 1, 0, 0, -1; break;
    case Pauli::Xpp: m << 0, -i, i, 0; break;
  }
  return m;
}

/// Phase-tracked tensor word i^phase * P_0 (x) P_1 (x) ... with qubit 0 leftmost.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t n) : letters_(n, Pauli::I) {}
  PauliString(std::vector<Pauli> letters, std::uint8_t phase = 0)
      : letters_(std::move(letters)), phase_(phase % 4) {}

  static PauliString single(std::size_t n, std::size_t qubit, Pauli p) {
    PauliString s(n);
    s.letters_.at(qubit) = p;
    return s;
  }

  /// Accepts whitespace-separated letters with an optional leading phase,
  /// e.g. "X Xp", "-i Xpp", "+X I Xp".
  static PauliString parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string tok;
    std::vector<Pauli> letters;
    std::uint8_t phase = 0;
    bool first = true;
    while (in >> tok) {
      if (first) {
        first = false;
        std::string_view t = tok;
        std::uint8_t sign = 0;
        if (!t.empty() && (t[0] == '+' || t[0] == '-')) {
          sign = t[0] == '-' ? 2 : 0;
          t.remove_prefix(1);
        }
        if (t == "i") {
          phase = (sign + 1) % 4;
          continue;
        }
        phase = sign;
        if (t.empty()) continue;
        tok = std::string(t);
      }
      auto p = pauli_from_name(tok);
      if (!p) throw InputError("unknown Pauli letter '" + tok + "'");
      letters.push_back(*p);
    }
    if (letters.empty()) throw InputError("empty Pauli string");
    return PauliString(std::move(letters), phase);
  }

  std::size_t size() const noexcept { return letters_.size(); }
  Pauli operator[](std::size_t q) const { return letters_[q]; }
  std::span<const Pauli> letters() const noexcept { return letters_; }
  void set(std::size_t q, Pauli p) { letters_.at(q) = p; }

  /// Power of i in front of the word.
  std::uint8_t phase() const noexcept { return phase_; }
  cplx phase_value() const {
    static constexpr std::array<cplx, 4> powers = {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};
    return powers[phase_];
  }
  PauliString with_phase(std::uint8_t phase) const { return PauliString(letters_, phase); }
  PauliString times_i_power(std::uint8_t k) const { return PauliString(letters_, phase_ + k); }

  bool is_hermitian() const noexcept { return phase_ % 2 == 0; }
  bool is_identity() const {
    return std::all_of(letters_.begin(), letters_.end(), [](Pauli p) { return p == Pauli::I; });
  }
  std::size_t weight() const {
    return static_cast<std::size_t>(
        std::count_if(letters_.begin(), letters_.end(), [](Pauli p) { return p != Pauli::I; }));
  }

  bool commutes_with(const PauliString& other) const {
    require_same_size(other);
    std::size_t anti = 0;
    for (std::size_t q = 0; q < size(); ++q) anti += anticommute(letters_[q], other.letters_[q]);
    return anti % 2 == 0;
  }

  PauliString operator*(const PauliString& rhs) const {
    require_same_size(rhs);
    PauliString out(size());
    unsigned phase = phase_ + rhs.phase_;
    for (std::size_t q = 0; q < size(); ++q) {
      phase += product_phase(letters_[q], rhs.letters_[q]);
      out.letters_[q] = product_letter(letters_[q], rhs.letters_[q]);
    }
    out.phase_ = static_cast<std::uint8_t>(phase % 4);
    return out;
  }

  /// Same letters placed on `wires` of an n-qubit register.
  PauliString embedded(std::size_t n, std::span<const std::size_t> wires) const {
    if (wires.size() != size()) throw InputError("embedding needs one wire per letter");
    PauliString out(n);
    out.phase_ = phase_;
    for (std::size_t k = 0; k < wires.size(); ++k) out.letters_.at(wires[k]) = letters_[k];
    return out;
  }

  PauliString restricted(std::span<const std::size_t> wires) const {
    PauliString out(wires.size());
    for (std::size_t k = 0; k < wires.size(); ++k) out.letters_[k] = letters_.at(wires[k]);
    return out;
  }

  /// Dense 2^n x 2^n matrix, big-endian (qubit 0 is the most significant bit).
  Matrix to_matrix() const {
    Matrix m = Matrix::Identity(1, 1);
    for (Pauli p : letters_) {
      Matrix next = Eigen::kroneckerProduct(m, pauli_matrix(p)).eval();
      m = std::move(next);
    }
    return m * phase_value();
  }

  /// "+X Xp", "-i Xpp", ...
  std::string to_string() const {
    static constexpr std::array<std::string_view, 4> prefix = {"+", "+i", "-", "-i"};
    std::string s(prefix[phase_]);
    for (std::size_t q = 0; q < size(); ++q) {
      s += (q == 0 && (phase_ % 2 == 0)) ? "" : " ";
      s += pauli_name(letters_[q]);
    }
    return s;
  }

  /// Letters only, separated by spaces ("X Xp").
  std::string letters_string() const {
    std::string s;
    for (std::size_t q = 0; q < size(); ++q) {
      if (q) s += ' ';
      s += pauli_name(letters_[q]);
    }
    return s;
  }

  /// Human-facing form with primes, e.g. "-X⊗X′".
  std::string display() const {
    static constexpr std::array<std::string_view, 4> prefix = {"", "i", "-", "-i"};
    std::string s(prefix[phase_]);
    for (std::size_t q = 0; q < size(); ++q) {
      if (q) s += "⊗";
      s += pauli_display(letters_[q]);
    }
    return s;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

  /// Equality ignoring the phase.
  bool same_letters(const PauliString& other) const { return letters_ == other.letters_; }

 private:
  void require_same_size(const PauliString& other) const {
    if (other.size() != size()) {
      throw InputError("Pauli strings act on different qubit counts (" + std::to_string(size()) +
                       " vs " + std::to_string(other.size()) + ")");
    }
  }

  std::vector<Pauli> letters_;
  std::uint8_t phase_ = 0;
};

inline PauliString pauli_mul(const PauliString& a, const PauliString& b) { return a * b; }

}  // namespace mbq
