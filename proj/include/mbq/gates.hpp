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
#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "mbq/core.hpp"
#include "mbq/pauli.hpp"

namespace mbq {

/// Square matrix checked to be unitary on construction.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix m, double tol = kStateTolerance) : m_(std::move(m)) {
    const auto d = m_.rows();
    if (d == 0 || d != m_.cols() || (d & (d - 1)) != 0) {
      throw InputError("gate matrix must be square with power-of-two dimension");
    }
    const double err = (m_ * m_.adjoint() - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (!(err <= tol)) throw InputError("gate matrix is not unitary (deviation " + std::to_string(err) + ")");
  }

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  std::size_t num_qubits() const noexcept {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < dim()) ++k;
    return k;
  }
  cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint(), 1.0); }
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const { return UnitaryMatrix(m_ * rhs.m_, 1.0); }

 private:
  Matrix m_;
};

enum class Gate { I, X, Xp, Xpp, H, G, T, S, CNOT, CH, SWAP };

inline std::string_view gate_name(Gate g) {
  switch (g) {
    case Gate::I: return "I";
    case Gate::X: return "X";
    case Gate::Xp: return "Xp";
    case Gate::Xpp: return "Xpp";
    case Gate::H: return "H";
    case Gate::G: return "G";
    case Gate::T: return "T";
    case Gate::S: return "S";
    case Gate::CNOT: return "CNOT";
    case Gate::CH: return "CH";
    case Gate::SWAP: return "SWAP";
  }
  return "?";
}

inline std::optional<Gate> gate_from_name(std::string_view name) {
  std::string t(name);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  for (Gate g : {Gate::I, Gate::X, Gate::Xp, Gate::Xpp, Gate::H, Gate::G, Gate::T, Gate::S, Gate::CNOT,
                 Gate::CH, Gate::SWAP}) {
    std::string n(gate_name(g));
    std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::toupper(c); });
    if (n == t) return g;
  }
  return std::nullopt;
}

inline std::size_t gate_arity(Gate g) {
  return (g == Gate::CNOT || g == Gate::CH || g == Gate::SWAP) ? 2 : 1;
}

inline std::optional<Pauli> gate_as_pauli(Gate g) {
  switch (g) {
    case Gate::I: return Pauli::I;
    case Gate::X: return Pauli::X;
    case Gate::Xp: return Pauli::Xp;
    case Gate::Xpp: return Pauli::Xpp;
    default: return std::nullopt;
  }
}

namespace detail {

inline Matrix controlled(const Matrix& u) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m.block(2, 2, 2, 2) = u;
  return m;
}

inline Matrix hadamard() { return (pauli_matrix(Pauli::X) + pauli_matrix(Pauli::Xp)) * kSqrtHalf; }

// G = (X' + X'') / sqrt(2)
inline Matrix g_matrix() { return (pauli_matrix(Pauli::Xp) + pauli_matrix(Pauli::Xpp)) * kSqrtHalf; }

}  // namespace detail

/// Exact matrix of a named gate. Two-qubit gates take (control, target) in
/// that order; CH is the controlled Hadamard.
inline UnitaryMatrix named_gate(Gate g) {
  const cplx i{0.0, 1.0};
  switch (g) {
    case Gate::I:
    case Gate::X:
    case Gate::Xp:
    case Gate::Xpp: return UnitaryMatrix(pauli_matrix(*gate_as_pauli(g)));
    case Gate::H: return UnitaryMatrix(detail::hadamard());
    case Gate::G: return UnitaryMatrix(detail::g_matrix());
    case Gate::T: {
      Matrix m = Matrix::Zero(2, 2);
      m(0, 0) = 1;
      m(1, 1) = cplx{kSqrtHalf, kSqrtHalf};
      return UnitaryMatrix(m);
    }
    case Gate::S: {
      Matrix m = Matrix::Zero(2, 2);
      m(0, 0) = 1;
      m(1, 1) = i;
      return UnitaryMatrix(m);
    }
    case Gate::CNOT: return UnitaryMatrix(detail::controlled(pauli_matrix(Pauli::X)));
    case Gate::CH: return UnitaryMatrix(detail::controlled(detail::hadamard()));
    case Gate::SWAP: {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      m(3, 3) = 1;
      return UnitaryMatrix(m);
    }
  }
  throw InputError("unknown gate");
}

inline UnitaryMatrix named_gate(std::string_view name) {
  auto g = gate_from_name(name);
  if (!g) throw InputError("unknown gate '" + std::string(name) + "'");
  return named_gate(*g);
}

}  // namespace mbq
