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

#include <functional>
#include <map>
#include <random>

#include "mbq/gadgets.hpp"
#include "oracles.hpp"

using namespace mbq;
using oracle::M;
using oracle::V;

namespace {

using Runner = std::function<GadgetResult(const StateVector&, Rng&, std::span<const int>)>;

struct Case {
  GadgetKind kind;
  Runner run;
  M unitary;
  std::size_t n;
};

std::vector<Case> cases() {
  return {
      {GadgetKind::SigmaH, [](auto& s, auto& r, auto f) { return gadget_sigma_h(s, 0, r, f); }, oracle::had(), 1},
      {GadgetKind::SigmaHSwapped,
       [](auto& s, auto& r, auto f) { return gadget_sigma_h(s, 0, r, f, SigmaHVariant::Swapped); }, oracle::had(), 1},
      {GadgetKind::Sigma, [](auto& s, auto& r, auto f) { return gadget_sigma(s, 0, r, f); }, oracle::id2(), 1},
      {GadgetKind::SigmaXPrepared,
       [](auto& s, auto& r, auto f) { return gadget_sigma(s, 0, r, f, SigmaForm::XPrepared); }, oracle::id2(), 1},
      {GadgetKind::SigmaHPrefixed,
       [](auto& s, auto& r, auto f) { return gadget_sigma(s, 0, r, f, SigmaForm::HPrefixed); }, oracle::id2(), 1},
      {GadgetKind::SigmaT, [](auto& s, auto& r, auto f) { return gadget_sigma_t(s, 0, r, f); }, oracle::phase_t(), 1},
      {GadgetKind::SigmaTGForm,
       [](auto& s, auto& r, auto f) { return gadget_sigma_t(s, 0, r, f, SigmaTForm::GForm); }, oracle::phase_t(), 1},
      {GadgetKind::SigmaG, [](auto& s, auto& r, auto f) { return gadget_sigma_g(s, 0, r, f); }, oracle::gmat(), 1},
      {GadgetKind::Cnot, [](auto& s, auto& r, auto f) { return gadget_cnot(s, 0, 1, r, f); }, oracle::cnot(), 2},
  };
}

std::vector<int> pattern(std::size_t code, std::size_t len) {
  std::vector<int> p;
  for (std::size_t k = 0; k < len; ++k) p.push_back(((code >> (len - 1 - k)) & 1U) ? -1 : 1);
  return p;
}

/// Byproduct letters (oracle alphabet) for each forced pattern, by extraction.
std::map<std::vector<int>, std::string> empirical_table(const Case& c, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  Rng rng(seed);
  std::map<std::vector<int>, std::string> table;
  const std::size_t len = gadget_measurement_count(c.kind);
  const V psi = oracle::random_state(c.n, g);
  for (std::size_t code = 0; code < (std::size_t{1} << len); ++code) {
    const auto f = pattern(code, len);
    const auto r = c.run(oracle::state(psi), rng, f);
    table[f] = oracle::extract_byproduct(oracle::vec(r.post_state), c.unitary * psi, c.n).value_or("?");
  }
  return table;
}

}  // namespace

TEST(Gadgets, ExhaustiveForcedContractAndConventionSoundness) {
  std::mt19937_64 g(1);
  Rng rng(1);
  for (const auto& c : cases()) {
    const std::size_t len = gadget_measurement_count(c.kind);
    for (std::size_t code = 0; code < (std::size_t{1} << len); ++code) {
      const auto f = pattern(code, len);
      for (int input = 0; input < 50; ++input) {
        const V psi = oracle::random_state(c.n, g);
        const auto r = c.run(oracle::state(psi), rng, f);
        ASSERT_EQ(r.eigenvalues(), f);
        const V expected = oracle::word(oracle::letters(r.byproduct)) * c.unitary * psi;
        EXPECT_GE(oracle::fid(r.post_state, expected), 1.0 - 1e-10) << gadget_name(c.kind);
        const auto extracted = oracle::extract_byproduct(oracle::vec(r.post_state), c.unitary * psi, c.n);
        ASSERT_TRUE(extracted.has_value()) << gadget_name(c.kind);
        EXPECT_EQ(*extracted, oracle::letters(r.byproduct)) << gadget_name(c.kind);
      }
    }
  }
}

TEST(Gadgets, SeededRunsSatisfyContract) {
  std::mt19937_64 g(2);
  Rng rng(2);
  for (const auto& c : cases()) {
    for (int run = 0; run < 1000; ++run) {
      const V psi = oracle::random_state(c.n, g);
      const auto r = c.run(oracle::state(psi), rng, {});
      const double f = c.n == 2 ? gadget_contract_fidelity(r, oracle::state(psi), {0, 1})
                                : gadget_contract_fidelity(r, oracle::state(psi), {0});
      ASSERT_GE(f, 1.0 - 1e-10) << gadget_name(c.kind);
      ASSERT_EQ(r.ancilla_residue.size(), 1u);
    }
  }
}

TEST(Gadgets, OutcomeStatisticsFollowBornRule) {
  // Every gadget measurement anticommutes with its predecessor, so each
  // outcome is a fair coin regardless of the input.
  std::mt19937_64 g(3);
  Rng rng(3);
  for (const auto& c : cases()) {
    const std::size_t len = gadget_measurement_count(c.kind);
    std::vector<int> minus(len, 0);
    const int n = 4000;
    for (int run = 0; run < n; ++run) {
      const auto r = c.run(oracle::state(oracle::random_state(c.n, g)), rng, {});
      for (std::size_t k = 0; k < len; ++k) {
        EXPECT_NEAR(r.outcomes[k].probability, 0.5, 1e-10);
        minus[k] += r.outcomes[k].eigenvalue == -1;
      }
    }
    for (int m : minus) EXPECT_LE(std::abs(m / static_cast<double>(n) - 0.5), 4 * 0.5 / std::sqrt(n));
  }
}

TEST(SigmaH, Examples) {
  Rng rng(4);
  const std::vector<int> plus = {1, 1, 1};
  const auto r = gadget_sigma_h(StateVector::zeros(1), 0, rng, plus);
  EXPECT_TRUE(r.byproduct.is_identity());
  EXPECT_NEAR(oracle::fid(r.post_state, V(oracle::had() * oracle::ket("0"))), 1.0, 1e-12);
  const V plus_state = oracle::had() * oracle::ket("0");
  for (int k = 0; k < 20; ++k) {
    const auto s = gadget_sigma_h(oracle::state(plus_state), 0, rng);
    const V want = oracle::word(oracle::letters(s.byproduct)) * oracle::ket("0");
    EXPECT_NEAR(oracle::fid(s.post_state, want), 1.0, 1e-12);
  }
}

TEST(SigmaH, PredictedByproductExamples) {
  const std::vector<int> a = {1, 1, 1}, b = {1, -1, 1}, c = {-1, 1, 1};
  EXPECT_TRUE(predicted_byproduct(GadgetKind::SigmaH, a).is_identity());
  EXPECT_EQ(predicted_byproduct(GadgetKind::SigmaH, b), PauliString({Pauli::X}));
  EXPECT_EQ(predicted_byproduct(GadgetKind::SigmaH, c).letters()[0], Pauli::Xp);
  const std::vector<int> cn = {-1, 1, 1, 1};
  EXPECT_EQ(predicted_byproduct(GadgetKind::Cnot, cn), PauliString::parse("I X"));
  const std::vector<int> short_list = {1, 1};
  EXPECT_THROW(predicted_byproduct(GadgetKind::SigmaH, short_list), InputError);
  EXPECT_THROW(predicted_byproduct(GadgetKind::Cnot, a), InputError);
}

TEST(Sigma, AllPlusIsIdentity) {
  Rng rng(5);
  const std::vector<int> f = {1, 1, 1};
  const auto r = gadget_sigma(StateVector::zeros(1), 0, rng, f);
  EXPECT_TRUE(r.byproduct.is_identity());
  EXPECT_NEAR(oracle::fid(r.post_state, oracle::ket("0")), 1.0, 1e-12);
}

TEST(Sigma, FormTables) {
  const auto all = cases();
  const auto prefixed = empirical_table(all[4], 6);
  const auto x_prepared = empirical_table(all[3], 7);
  const auto xp_prepared = empirical_table(all[2], 8);
  // The H-prefixed and X-prepared forms share one table.
  EXPECT_EQ(prefixed, x_prepared);
  // The X'-prepared form is its H conjugate: X and X' exchanged.
  for (const auto& [f, w] : x_prepared) {
    std::string swapped = w;
    for (char& ch : swapped) ch = ch == 'X' ? 'Z' : ch == 'Z' ? 'X' : ch;
    EXPECT_EQ(xp_prepared.at(f), swapped);
  }
  std::size_t distinct = 0;
  for (const auto& [f, w] : x_prepared) distinct += w != "I";
  EXPECT_EQ(distinct, 6u);
}

TEST(SigmaT, Examples) {
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const auto r = gadget_sigma_t(StateVector::zeros(1), 0, rng);
    EXPECT_NEAR(oracle::fid(r.post_state, V(oracle::word(oracle::letters(r.byproduct)) * oracle::ket("0"))), 1.0,
                1e-12);
  }
  const std::vector<int> plus = {1, 1, 1};
  for (auto form : {SigmaTForm::Conjugated, SigmaTForm::GForm}) {
    const auto r = gadget_sigma_t(StateVector::basis(1, "1"), 0, rng, plus, form);
    EXPECT_TRUE(equal_up_to_global_phase(r.post_state, apply_gate(StateVector::basis(1, "1"), named_gate(Gate::T), {0}),
                                         1e-10)
                    .has_value());
  }
}

TEST(SigmaT, VariantsShareTableAndByproductsArePauli) {
  const auto all = cases();
  const auto a = empirical_table(all[5], 10);
  const auto b = empirical_table(all[6], 11);
  EXPECT_EQ(a, b);
  for (const auto& [f, w] : a) EXPECT_NE(w, "?");
}

TEST(SigmaG, MapsXpEigenvectorsToXppEigenvectors) {
  Rng rng(12);
  const std::vector<int> plus = {1, 1, 1};
  const auto r = gadget_sigma_g(StateVector::zeros(1), 0, rng, plus);
  EXPECT_TRUE(r.byproduct.is_identity());
  const V y_plus = (oracle::ket("0") + oracle::kI * oracle::ket("1")) * oracle::kR;
  EXPECT_NEAR(oracle::fid(r.post_state, y_plus), 1.0, 1e-12);
  for (int k = 0; k < 20; ++k) {
    const auto s = gadget_sigma_g(StateVector::zeros(1), 0, rng);
    EXPECT_NEAR(oracle::fid(s.post_state, V(oracle::word(oracle::letters(s.byproduct)) * oracle::gmat() *
                                            oracle::ket("0"))),
                1.0, 1e-12);
  }
}

TEST(Cnot, Examples) {
  Rng rng(13);
  const std::vector<int> plus = {1, 1, 1, 1};
  const auto r = gadget_cnot(StateVector::basis(2, "10"), 0, 1, rng, plus);
  EXPECT_TRUE(r.byproduct.is_identity());
  EXPECT_NEAR(oracle::fid(r.post_state, oracle::ket("11")), 1.0, 1e-12);
  for (int k = 0; k < 50; ++k) {
    const auto s = gadget_cnot(StateVector::zeros(2), 0, 1, rng);
    EXPECT_TRUE(s.byproduct[0] == Pauli::I || s.byproduct[0] == Pauli::Xp);
    EXPECT_TRUE(s.byproduct[1] == Pauli::I || s.byproduct[1] == Pauli::X);
    EXPECT_NEAR(oracle::fid(s.post_state, V(oracle::word(oracle::letters(s.byproduct)) * oracle::ket("00"))), 1.0,
                1e-12);
  }
}

TEST(Cnot, ReversedAndEmbeddedWires) {
  std::mt19937_64 g(14);
  Rng rng(14);
  for (int k = 0; k < 100; ++k) {
    const V psi = oracle::random_state(3, g);
    const auto r = gadget_cnot(oracle::state(psi), 2, 0, rng);
    const V want = oracle::embed(oracle::word(oracle::letters(r.byproduct)), {2, 0}, 3) *
                   oracle::embed(oracle::cnot(), {2, 0}, 3) * psi;
    EXPECT_NEAR(oracle::fid(r.post_state, want), 1.0, 1e-10);
  }
}

TEST(Gadgets, Errors) {
  Rng rng(15);
  const auto s = StateVector::zeros(1);
  EXPECT_THROW(gadget_sigma_h(s, 1, rng), InputError);
  EXPECT_THROW(gadget_cnot(StateVector::zeros(2), 1, 1, rng), InputError);
  const std::vector<int> two = {1, 1};
  EXPECT_THROW(gadget_sigma_h(s, 0, rng, two), InputError);
}

TEST(DerivedXp, EigenstatesAreDeterministic) {
  Rng rng(16);
  for (int k = 0; k < 200; ++k) {
    EXPECT_EQ(measure_xprime_derived(StateVector::zeros(1), 0, rng).first.eigenvalue, 1);
    EXPECT_EQ(measure_xprime_derived(StateVector::basis(1, "1"), 0, rng).first.eigenvalue, -1);
  }
}

TEST(DerivedXp, MatchesDirectMeasurement) {
  Rng rng(17);
  const V plus = oracle::had() * oracle::ket("0");
  int minus = 0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const auto [out, post] = measure_xprime_derived(oracle::state(plus), 0, rng);
    minus += out.eigenvalue == -1;
    EXPECT_NEAR(oracle::fid(post, *oracle::project(plus, oracle::sz(), out.eigenvalue)), 1.0, 1e-10);
  }
  EXPECT_LE(std::abs(minus / static_cast<double>(n) - 0.5), 4 * 0.005);
}

TEST(DerivedXp, PostStatesOnEntangledInputs) {
  std::mt19937_64 g(18);
  Rng rng(18);
  for (int k = 0; k < 500; ++k) {
    const V psi = oracle::random_state(2, g);
    const auto [out, post] = measure_xprime_derived(oracle::state(psi), 1, rng);
    const auto want = oracle::project(psi, oracle::word("IZ"), out.eigenvalue);
    ASSERT_TRUE(want.has_value());
    EXPECT_NEAR(oracle::fid(post, *want), 1.0, 1e-10);
  }
}

TEST(Parity, Examples) {
  Rng rng(19);
  const V bell = (oracle::ket("00") + oracle::ket("11")) * oracle::kR;
  EXPECT_EQ(measure_parity_conjugated(oracle::state(bell), 0, 1, ParityKind::XX, rng).first.eigenvalue, 1);
  EXPECT_EQ(measure_parity_conjugated(StateVector::basis(2, "01"), 0, 1, ParityKind::XpXp, rng).first.eigenvalue, -1);
  EXPECT_THROW(measure_parity_conjugated(StateVector::zeros(2), 1, 1, ParityKind::XX, rng), InputError);
}

TEST(Parity, MatchesDirectProjectors) {
  std::mt19937_64 g(20);
  Rng rng(20);
  for (int k = 0; k < 1000; ++k) {
    const V psi = oracle::random_state(2, g);
    for (auto [kind, w] : {std::pair{ParityKind::XX, "XX"}, std::pair{ParityKind::XpXp, "ZZ"}}) {
      for (int o : {1, -1}) {
        const auto [out, post] = measure_parity_conjugated(oracle::state(psi), 0, 1, kind, rng, o);
        EXPECT_NEAR(out.probability, oracle::prob(psi, oracle::word(w), o), 1e-10);
        EXPECT_NEAR(oracle::fid(post, *oracle::project(psi, oracle::word(w), o)), 1.0, 1e-10);
      }
    }
  }
}

TEST(GViaHghgh, Examples) {
  Rng rng(21);
  Eigen::ComplexEigenSolver<M> es(oracle::gmat());
  for (int idx = 0; idx < 2; ++idx) {
    const V vec = es.eigenvectors().col(idx);
    const int e = es.eigenvalues()(idx).real() > 0 ? 1 : -1;
    for (int k = 0; k < 20; ++k) {
      const auto [out, post] = measure_g_via_hghgh(oracle::state(vec), 0, rng);
      EXPECT_EQ(out.eigenvalue, e);
      EXPECT_NEAR(oracle::fid(post, vec), 1.0, 1e-12);
    }
    const double p_zero = std::norm(vec.dot(oracle::ket("0")));
    const auto [out, post] = measure_g_via_hghgh(StateVector::zeros(1), 0, rng, e);
    EXPECT_NEAR(out.probability, p_zero, 1e-12);
  }
}

TEST(GViaHghgh, MatchesDirectMeasurement) {
  std::mt19937_64 g(22);
  Rng rng(22);
  for (int k = 0; k < 1000; ++k) {
    const V psi = oracle::random_state(1, g);
    for (int o : {1, -1}) {
      if (oracle::prob(psi, oracle::gmat(), o) < 1e-9) continue;
      const auto [out, post] = measure_g_via_hghgh(oracle::state(psi), 0, rng, o);
      EXPECT_NEAR(out.probability, oracle::prob(psi, oracle::gmat(), o), 1e-10);
      EXPECT_NEAR(oracle::fid(post, *oracle::project(psi, oracle::gmat(), o)), 1.0, 1e-10);
    }
  }
}
