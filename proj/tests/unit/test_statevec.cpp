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

#include <gtest/gtest.h>

#include <random>

#include "mbq/statevec.hpp"
#include "oracles.hpp"

using namespace mbq;

namespace {

Observable obs(const char* text) { return Observable::parse_pauli(text); }

}  // namespace

TEST(StateVector, BasisStates) {
  EXPECT_LT((oracle::vec(new_basis_state(1, "0")) - oracle::ket("0")).norm(), 1e-15);
  const auto s = new_basis_state(2, "10");
  ASSERT_EQ(s.dim(), 4u);
  EXPECT_EQ(s[2], cplx(1, 0));
  EXPECT_EQ(s[0] + s[1] + s[3], cplx(0, 0));
  EXPECT_EQ(new_basis_state(3, "000")[0], cplx(1, 0));
}

TEST(StateVector, BasisErrors) {
  EXPECT_THROW(new_basis_state(2, "0"), InputError);
  EXPECT_THROW(new_basis_state(1, "2"), InputError);
  EXPECT_THROW(new_basis_state(0, ""), InputError);
  EXPECT_NO_THROW(StateVector::zeros(16));
  EXPECT_THROW(StateVector::zeros(17), InputError);
}

TEST(StateVector, FromAmplitudesNormalizes) {
  const auto s = StateVector::from_amplitudes({cplx(3, 0), cplx(0, 4)});
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(s[1]), 0.8, 1e-12);
  EXPECT_THROW(StateVector::from_amplitudes({cplx(1, 0), cplx(0, 0), cplx(0, 0)}), InputError);
  EXPECT_THROW(StateVector::from_amplitudes({cplx(0, 0), cplx(0, 0)}), InputError);
}

TEST(ApplyGate, HadamardOnZero) {
  const auto s = apply_gate(new_basis_state(1, "0"), named_gate(Gate::H), {0});
  EXPECT_NEAR(std::abs(s[0] - oracle::kR), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s[1] - oracle::kR), 0.0, 1e-12);
}

TEST(ApplyGate, XpFlipsPlusToMinus) {
  const auto plus = StateVector::basis(1, "0").with_qubit('+').without_qubit(0, {1.0, 0.0});
  const auto s = apply_gate(plus, named_gate(Gate::Xp), {0});
  EXPECT_NEAR(std::abs(s[0] - oracle::kR), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s[1] + oracle::kR), 0.0, 1e-12);
}

TEST(ApplyGate, CnotMakesBell) {
  const auto in = StateVector::from_amplitudes({1, 0, 1, 0});
  const auto s = apply_gate(in, named_gate(Gate::CNOT), {0, 1});
  EXPECT_NEAR(std::abs(s[0] - oracle::kR), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s[3] - oracle::kR), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s[1]) + std::abs(s[2]), 0.0, 1e-12);
}

TEST(ApplyGate, Errors) {
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 1) = 0.5;
  EXPECT_THROW(UnitaryMatrix{bad}, InputError);
  EXPECT_THROW(UnitaryMatrix{Matrix::Identity(3, 3)}, InputError);
  auto s = StateVector::zeros(2);
  EXPECT_THROW(apply_gate(s, named_gate(Gate::CNOT), {0, 0}), InputError);
  EXPECT_THROW(apply_gate(s, named_gate(Gate::H), {2}), InputError);
  EXPECT_THROW(apply_gate(s, named_gate(Gate::CNOT), {0}), InputError);
}

TEST(ApplyGate, MatchesEmbeddedOracle) {
  std::mt19937_64 g(11);
  Rng rng(5);
  const std::vector<std::pair<Gate, oracle::M>> gates = {
      {Gate::H, oracle::had()}, {Gate::T, oracle::phase_t()}, {Gate::G, oracle::gmat()},
      {Gate::CNOT, oracle::cnot()}, {Gate::CH, oracle::ch()}, {Gate::SWAP, oracle::swap()}};
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3;
    const oracle::V psi = oracle::random_state(n, g);
    const auto& [gate, m] = gates[static_cast<std::size_t>(trial) % gates.size()];
    std::vector<std::size_t> targets;
    while (targets.size() < gate_arity(gate)) {
      const std::size_t q = rng.below(n);
      if (std::find(targets.begin(), targets.end(), q) == targets.end()) targets.push_back(q);
    }
    const auto got = apply_gate(oracle::state(psi), named_gate(gate), targets);
    const oracle::V want = oracle::embed(m, targets, n) * psi;
    EXPECT_LT((oracle::vec(got) - want).norm(), 1e-12) << gate_name(gate);
    EXPECT_NEAR(got.norm(), 1.0, 1e-12);
  }
}

TEST(Measure, EigenstateIsDeterministic) {
  Rng rng(1);
  const auto plus = apply_gate(StateVector::zeros(1), named_gate(Gate::H), {0});
  for (int i = 0; i < 100; ++i) {
    auto [out, post] = measure(plus, obs("X"), rng);
    EXPECT_EQ(out.eigenvalue, 1);
    EXPECT_NEAR(out.probability, 1.0, 1e-12);
    EXPECT_NEAR(fidelity(post, plus), 1.0, 1e-12);
  }
}

TEST(Measure, XOnZeroBothBranches) {
  Rng rng(2);
  for (int o : {1, -1}) {
    auto [out, post] = measure(StateVector::zeros(1), obs("X"), rng, o);
    EXPECT_EQ(out.eigenvalue, o);
    EXPECT_NEAR(out.probability, 0.5, 1e-12);
    const oracle::V want = oracle::V((oracle::ket("0") + static_cast<double>(o) * oracle::ket("1")) * oracle::kR);
    EXPECT_NEAR(oracle::fid(post, want), 1.0, 1e-12);
  }
}

TEST(Measure, PairOnBellMatchesProjector) {
  Rng rng(3);
  const oracle::V bell = (oracle::ket("00") + oracle::ket("11")) * oracle::kR;
  const oracle::M xz = oracle::word("XZ");
  for (int o : {1, -1}) {
    auto [out, post] = measure_pauli(oracle::state(bell), PauliString::parse("X Xp"), rng, o);
    EXPECT_NEAR(out.probability, 0.5, 1e-12);
    EXPECT_LT((oracle::vec(post) - *oracle::project(bell, xz, o)).norm(), 1e-10);
  }
}

TEST(Measure, RejectsImaginaryPhase) {
  Rng rng(4);
  EXPECT_THROW(measure_pauli(StateVector::zeros(1), PauliString::parse("i X"), rng), InputError);
  EXPECT_THROW(measure_pauli(StateVector::zeros(2), PauliString::parse("X"), rng), InputError);
}

TEST(Measure, ForcedImpossibleOutcomeIsAnError) {
  Rng rng(5);
  EXPECT_THROW(measure(StateVector::zeros(1), obs("Xp"), rng, -1), InputError);
  EXPECT_THROW(measure(StateVector::zeros(1), obs("Xp"), rng, 0), InputError);
}

TEST(Measure, ZeroBranchNeverSampled) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    Rng rng(seed);
    EXPECT_EQ(measure(StateVector::zeros(1), obs("Xp"), rng).first.eigenvalue, 1);
  }
}

TEST(Measure, SameSeedSameOutcomes) {
  std::mt19937_64 g(6);
  const auto psi = oracle::state(oracle::random_state(3, g));
  auto run = [&](std::uint64_t seed) {
    Rng rng(seed);
    std::vector<int> outs;
    StateVector s = psi;
    for (const char* o : {"X I I", "I Xp Xp", "Xpp X I", "I I X", "Xp I Xp"}) {
      outs.push_back(measure_inplace(s, obs(o), rng).eigenvalue);
    }
    return outs;
  };
  EXPECT_EQ(run(99), run(99));
}

TEST(Measure, BornStatisticsXOnZero) {
  Rng rng(7);
  const int n = 10000;
  int plus = 0;
  for (int i = 0; i < n; ++i) plus += measure(StateVector::zeros(1), obs("X"), rng).first.eigenvalue == 1;
  EXPECT_LE(std::abs(plus / static_cast<double>(n) - 0.5), 4 * 0.005);
}

TEST(Measure, RepeatIsIdempotent) {
  std::mt19937_64 g(8);
  Rng rng(8);
  const std::vector<const char*> words = {"X I", "Xp Xpp", "Xpp I", "X X", "I Xp"};
  for (int trial = 0; trial < 1000; ++trial) {
    StateVector s = oracle::state(oracle::random_state(2, g));
    const Observable o = obs(words[static_cast<std::size_t>(trial) % words.size()]);
    const int first = measure_inplace(s, o, rng).eigenvalue;
    const auto second = measure_inplace(s, o, rng);
    EXPECT_EQ(second.eigenvalue, first);
    EXPECT_NEAR(second.probability, 1.0, 1e-12);
  }
}

TEST(Measure, EveryPauliUpToThreeQubitsMatchesProjectorOracle) {
  std::mt19937_64 g(9);
  Rng rng(9);
  const std::string alphabet = "IXZY";
  const std::array<Pauli, 4> lib = {Pauli::I, Pauli::X, Pauli::Xp, Pauli::Xpp};
  for (std::size_t n = 1; n <= 3; ++n) {
    const oracle::V psi = oracle::random_state(n, g);
    for (std::size_t code = 1; code < (std::size_t{1} << (2 * n)); ++code) {
      std::string w;
      std::vector<Pauli> letters;
      for (std::size_t q = 0; q < n; ++q) {
        const std::size_t c = (code >> (2 * (n - 1 - q))) & 3U;
        w += alphabet[c];
        letters.push_back(lib[c]);
      }
      for (int sign : {1, -1}) {
        const oracle::M m = static_cast<double>(sign) * oracle::word(w);
        const PauliString p(letters, sign == 1 ? 0 : 2);
        for (int o : {1, -1}) {
          auto [out, post] = measure_pauli(oracle::state(psi), p, rng, o);
          EXPECT_NEAR(out.probability, oracle::prob(psi, m, o), 1e-12);
          EXPECT_LT((oracle::vec(post) - *oracle::project(psi, m, o)).norm(), 1e-10) << w;
        }
      }
    }
  }
}

TEST(StateVector, NormPreservedUnderRandomSequences) {
  std::mt19937_64 g(10);
  Rng rng(10);
  const std::vector<Gate> gates = {Gate::H, Gate::T, Gate::G, Gate::S, Gate::X, Gate::CNOT, Gate::CH, Gate::SWAP};
  const std::vector<const char*> words = {"X I I", "Xp Xp I", "I Xpp X", "X X X"};
  for (int trial = 0; trial < 1000; ++trial) {
    StateVector s = oracle::state(oracle::random_state(3, g));
    for (int step = 0; step < 6; ++step) {
      if (rng.below(3) == 0) {
        measure_inplace(s, obs(words[rng.below(words.size())]), rng);
      } else {
        const Gate gate = gates[rng.below(gates.size())];
        const std::size_t a = rng.below(3);
        const std::size_t b = (a + 1 + rng.below(2)) % 3;
        if (gate_arity(gate) == 2) {
          s.apply_inplace(named_gate(gate), {a, b});
        } else {
          s.apply_inplace(named_gate(gate), {a});
        }
      }
      ASSERT_NEAR(s.norm(), 1.0, 1e-10);
    }
  }
}

TEST(GlobalPhase, Examples) {
  const auto zero = StateVector::zeros(1);
  const cplx ph = std::polar(1.0, kPi / 3);
  const auto rotated = StateVector::from_amplitudes({ph, 0.0});
  const auto r = equal_up_to_global_phase(zero, rotated, 1e-10);
  ASSERT_TRUE(r.has_value());
  EXPECT_NEAR(std::abs(*r - ph), 0.0, 1e-12);
  EXPECT_FALSE(equal_up_to_global_phase(zero, StateVector::basis(1, "1"), 1e-10).has_value());
  const auto h0 = apply_gate(zero, named_gate(Gate::H), {0});
  const auto plus = StateVector::from_amplitudes({oracle::kR, oracle::kR});
  const auto r2 = equal_up_to_global_phase(h0, plus, 1e-10);
  ASSERT_TRUE(r2.has_value());
  EXPECT_NEAR(std::abs(*r2 - 1.0), 0.0, 1e-12);
  EXPECT_THROW(equal_up_to_global_phase(zero, StateVector::zeros(2), 1e-10), InputError);
}

TEST(StateVector, AncillaAppendAndRemove) {
  std::mt19937_64 g(12);
  const oracle::V psi = oracle::random_state(2, g);
  const auto s = oracle::state(psi).with_qubit('-');
  const oracle::V want = oracle::kron(psi, oracle::V((oracle::ket("0") - oracle::ket("1")) * oracle::kR));
  EXPECT_LT((oracle::vec(s) - want).norm(), 1e-12);
  const auto back = s.without_qubit(2, {oracle::kR, -oracle::kR});
  EXPECT_NEAR(oracle::fid(back, psi), 1.0, 1e-12);
  EXPECT_THROW(s.without_qubit(2, {1.0, 0.0}), InternalError);
}
