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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mbq {

using cplx = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kStateTolerance = 1e-10;
// Measurement branches below this probability are treated as exactly zero.
inline constexpr double kZeroBranch = 1e-14;
inline constexpr std::size_t kMaxQubits = 16;

inline constexpr double kSqrtHalf = 0.70710678118654752440;
inline constexpr double kPi = 3.14159265358979323846;

/// Malformed arguments: bad qubit indices, non-unitary matrices, wrong arity.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An invariant the library promises was violated. Seeing one is a bug.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Conjugation produced an operator outside the Pauli group.
struct ContractError : std::logic_error {
  using std::logic_error::logic_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct CompileError : InputError {
  using InputError::InputError;
};

/// A measurement program referenced state it never produced.
struct ProgramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ExhaustionError : public std::runtime_error {
 public:
  ExhaustionError(std::size_t steps, double probability)
      : std::runtime_error("random walk did not reach its target within " + std::to_string(steps) +
                           " steps (probability " + std::to_string(probability) + ")"),
        steps_(steps),
        probability_(probability) {}

  std::size_t steps() const noexcept { return steps_; }
  double probability() const noexcept { return probability_; }

 private:
  std::size_t steps_;
  double probability_;
};

}  // namespace mbq
