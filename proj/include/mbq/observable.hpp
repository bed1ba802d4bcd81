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
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "mbq/core.hpp"
#include "mbq/pauli.hpp"

namespace mbq {

/// A Hermitian involution O = sum_k c_k P_k with real c_k, pairwise
/// anticommuting Hermitian Pauli words P_k and sum c_k^2 = 1. Covers every
/// Pauli observable plus G = (X' + X'')/sqrt(2) and its Pauli conjugates.
class Observable {
 public:
  struct Term {
    double coeff;
    PauliString pauli;  // phase 0
  };

  Observable() = default;

  static Observable from_pauli(const PauliString& p) {
    if (!p.is_hermitian()) throw InputError("observable " + p.to_string() + " has an imaginary phase");
    return Observable({Term{p.phase() == 0 ? 1.0 : -1.0, p.with_phase(0)}});
  }

  static Observable parse_pauli(std::string_view text) { return from_pauli(PauliString::parse(text)); }

  static Observable combination(std::vector<Term> terms) {
    if (terms.empty()) throw InputError("observable needs at least one term");
    const std::size_t n = terms.front().pauli.size();
    double sq = 0.0;
    for (auto& t : terms) {
      if (t.pauli.size() != n) throw InputError("observable terms act on different qubit counts");
      if (!t.pauli.is_hermitian()) throw InputError("observable term has an imaginary phase");
      if (t.pauli.phase() == 2) t.coeff = -t.coeff;
      t.pauli = t.pauli.with_phase(0);
      sq += t.coeff * t.coeff;
    }
    for (std::size_t a = 0; a < terms.size(); ++a) {
      for (std::size_t b = a + 1; b < terms.size(); ++b) {
        if (terms[a].pauli.commutes_with(terms[b].pauli)) {
          throw InputError("observable terms must pairwise anticommute");
        }
      }
    }
    if (std::abs(sq - 1.0) > kNormTolerance) throw InputError("observable coefficients must have unit norm");
    return Observable(std::move(terms));
  }

  /// G = (X' + X'')/sqrt(2) on one qubit.
  static Observable g() {
    return Observable({Term{kSqrtHalf, PauliString({Pauli::Xp})}, Term{kSqrtHalf, PauliString({Pauli::Xpp})}});
  }

  /// T^-1 X T = (X - X'')/sqrt(2) on one qubit.
  static Observable t_conjugated_x() {
    return Observable({Term{kSqrtHalf, PauliString({Pauli::X})}, Term{-kSqrtHalf, PauliString({Pauli::Xpp})}});
  }

  std::size_t num_qubits() const { return terms_.empty() ? 0 : terms_.front().pauli.size(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  bool is_pauli() const noexcept { return terms_.size() == 1; }

  /// The Pauli word (with sign) when this is a single-term observable.
  PauliString as_pauli() const {
    if (!is_pauli()) throw InputError("observable is not a Pauli word");
    return terms_.front().pauli.with_phase(terms_.front().coeff < 0 ? 2 : 0);
  }

  /// F O F^dagger for a Pauli F: each term keeps or flips its sign.
  Observable conjugated_by(const PauliString& frame) const {
    Observable out = *this;
    for (auto& t : out.terms_) {
      if (!t.pauli.commutes_with(frame)) t.coeff = -t.coeff;
    }
    return out;
  }

  Observable negated() const {
    Observable out = *this;
    for (auto& t : out.terms_) t.coeff = -t.coeff;
    return out;
  }

  Observable embedded(std::size_t n, std::span<const std::size_t> wires) const {
    Observable out = *this;
    for (auto& t : out.terms_) t.pauli = t.pauli.embedded(n, wires);
    return out;
  }

  Observable embedded(std::size_t n, std::initializer_list<std::size_t> wires) const {
    return embedded(n, std::span<const std::size_t>(wires.begin(), wires.size()));
  }

  Observable restricted(std::span<const std::size_t> wires) const {
    Observable out = *this;
    for (auto& t : out.terms_) t.pauli = t.pauli.restricted(wires);
    return out;
  }

  /// Qubits on which some term acts nontrivially.
  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t q = 0; q < num_qubits(); ++q) {
      for (const auto& t : terms_) {
        if (t.pauli[q] != Pauli::I) {
          s.push_back(q);
          break;
        }
      }
    }
    return s;
  }

  Matrix to_matrix() const {
    const auto d = static_cast<Eigen::Index>(std::size_t{1} << num_qubits());
    Matrix m = Matrix::Zero(d, d);
    for (const auto& t : terms_) m += t.coeff * t.pauli.to_matrix();
    return m;
  }

  /// Normalized eigenvector of a one-qubit observable for eigenvalue +-1.
  std::array<cplx, 2> eigenvector(int eigenvalue) const {
    if (num_qubits() != 1) throw InputError("eigenvector requires a one-qubit observable");
    const Matrix proj = (Matrix::Identity(2, 2) + static_cast<double>(eigenvalue) * to_matrix()) * 0.5;
    const Eigen::Index col = proj.col(0).norm() >= proj.col(1).norm() ? 0 : 1;
    Eigen::VectorXcd v = proj.col(col);
    v /= v.norm();
    return {v(0), v(1)};
  }

  /// "X Xp", "-Xp", "0.707106781187*Xp + 0.707106781187*Xpp".
  std::string to_string() const {
    if (is_pauli()) {
      return (terms_.front().coeff < 0 ? "-" : "") + terms_.front().pauli.letters_string();
    }
    std::string s;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", terms_[k].coeff);
      if (k) s += " + ";
      s += buf;
      s += "*";
      s += terms_[k].pauli.letters_string();
    }
    return s;
  }

  friend bool operator==(const Observable& a, const Observable& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k) {
      if (a.terms_[k].pauli != b.terms_[k].pauli) return false;
      if (std::abs(a.terms_[k].coeff - b.terms_[k].coeff) > kNormTolerance) return false;
    }
    return true;
  }

 private:
  explicit Observable(std::vector<Term> terms) : terms_(std::move(terms)) {}

  std::vector<Term> terms_;
};

}  // namespace mbq
