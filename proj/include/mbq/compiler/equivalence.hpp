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
#include <limits>
#include <vector>

#include "mbq/compiler/circuit.hpp"
#include "mbq/compiler/executor.hpp"

namespace mbq {

struct TrialRecord {
  std::size_t id;
  std::uint64_t seed;
  double fidelity;
  bool pass;
  std::vector<int> records;
};

struct EquivalenceReport {
  std::vector<TrialRecord> trials;
  double min_fidelity = 1.0;
  std::vector<std::size_t> failing;
  /// Per register: how often it read +1 and -1.
  std::vector<std::array<std::size_t, 2>> histogram;

  bool pass() const { return failing.empty(); }
};

/// Runs `program` on random inputs and compares with direct simulation of
/// `circuit`. Trial t draws its input from stream 2t and runs on stream
/// 2t+1 of `seed`; circuit measurements in the reference are forced to the
/// outcomes the program reported.
inline EquivalenceReport check_equivalence(const Circuit& circuit, const MeasurementProgram& program,
                                           std::size_t trials, double tol, std::uint64_t seed,
                                           ExecOptions options = {}) {
  if (circuit.num_qubits() != program.n_logical) throw InputError("program and circuit widths differ");
  if (trials == 0) throw InputError("need at least one trial");
  if (!(tol >= 0.0 && tol < 1.0)) throw InputError("tolerance must be in [0, 1)");
  EquivalenceReport report;
  report.histogram.assign(program.n_registers, {0, 0});
  const bool unitary = circuit.is_unitary();
  std::optional<UnitaryMatrix> u;
  if (unitary) u = circuit.unitary();
  for (std::size_t t = 0; t < trials; ++t) {
    Rng input_rng(Rng::derive(seed, 2 * t));
    const StateVector psi = StateVector::random(circuit.num_qubits(), input_rng);
    const std::uint64_t run_seed = Rng::derive(seed, 2 * t + 1);
    RunRecord run = execute(program, psi, run_seed, options);
    StateVector reference = psi;
    if (unitary) {
      std::vector<std::size_t> all(circuit.num_qubits());
      for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
      reference.apply_inplace(*u, all);
    } else {
      Rng unused(0);
      try {
        reference = simulate(circuit, psi, unused, run.records).state;
      } catch (const InputError&) {
        // The program reported a branch the circuit cannot take.
        reference = StateVector::zeros(circuit.num_qubits());
        reference.mutable_amplitudes().assign(reference.dim(), cplx{0, 0});
      }
    }
    const double f = fidelity(reference, run.frame.apply_to(run.final_state));
    const bool ok = f >= 1.0 - tol;
    report.min_fidelity = std::min(report.min_fidelity, f);
    if (!ok) report.failing.push_back(t);
    for (std::size_t r = 0; r < run.registers.size(); ++r) ++report.histogram[r][run.registers[r] == 1 ? 0 : 1];
    report.trials.push_back(TrialRecord{t, run_seed, f, ok, run.records});
  }
  return report;
}

}  // namespace mbq
