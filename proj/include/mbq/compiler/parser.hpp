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

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mbq/compiler/circuit.hpp"

namespace mbq {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline std::size_t parse_index(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ParseError(line, "expected a qubit index, got '" + tok + "'");
  return v;
}

}  // namespace detail

/// Parses the line format:
///
///   qubits 2          # first statement
///   h 0
///   cnot 0 1
///   measure x:0 xp:1  # Pauli measurement, letter:qubit pairs
///   prepare 1 +       # reset to 0, 1, + or -
///
/// Gate names: i x xp xpp h g t s cnot ch swap. `#` starts a comment.
inline Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> circuit;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto toks = detail::split_ws(detail::trim(raw));
    if (toks.empty()) continue;

    if (!circuit) {
      if (toks[0] != "qubits" || toks.size() != 2) throw ParseError(line_no, "expected 'qubits N' first");
      const std::size_t n = detail::parse_index(toks[1], line_no);
      if (n == 0 || n > kMaxQubits) {
        throw ParseError(line_no, "qubit count must be in 1.." + std::to_string(kMaxQubits));
      }
      circuit.emplace(n);
      continue;
    }
    const std::size_t n = circuit->num_qubits();
    auto qubit = [&](const std::string& tok) {
      const std::size_t q = detail::parse_index(tok, line_no);
      if (q >= n) throw ParseError(line_no, "qubit " + tok + " out of range for " + std::to_string(n) + " qubits");
      return q;
    };

    try {
      if (toks[0] == "qubits") throw ParseError(line_no, "'qubits' may appear only once");
      if (toks[0] == "measure") {
        if (toks.size() < 2) throw ParseError(line_no, "measure needs at least one letter:qubit pair");
        PauliString obs(n);
        for (std::size_t k = 1; k < toks.size(); ++k) {
          const auto colon = toks[k].find(':');
          if (colon == std::string::npos) throw ParseError(line_no, "expected letter:qubit, got '" + toks[k] + "'");
          auto letter = pauli_from_name(toks[k].substr(0, colon));
          if (!letter) throw ParseError(line_no, "unknown Pauli letter in '" + toks[k] + "'");
          const std::size_t q = qubit(toks[k].substr(colon + 1));
          if (obs[q] != Pauli::I) throw ParseError(line_no, "qubit repeated in measurement");
          obs.set(q, *letter);
        }
        circuit->measure(obs);
        continue;
      }
      if (toks[0] == "prepare") {
        if (toks.size() != 3 || toks[2].size() != 1) throw ParseError(line_no, "usage: prepare <qubit> <0|1|+|->");
        circuit->prepare(qubit(toks[1]), toks[2][0]);
        continue;
      }
      std::optional<Gate> g;
      const bool lower = std::all_of(toks[0].begin(), toks[0].end(), [](unsigned char c) { return !std::isupper(c); });
      if (lower) g = gate_from_name(toks[0]);
      if (!g) throw ParseError(line_no, "unknown gate '" + toks[0] + "'");
      if (toks.size() - 1 != gate_arity(*g)) {
        throw ParseError(line_no, toks[0] + " takes " + std::to_string(gate_arity(*g)) + " qubit(s), got " +
                                      std::to_string(toks.size() - 1));
      }
      std::vector<std::size_t> targets;
      for (std::size_t k = 1; k < toks.size(); ++k) targets.push_back(qubit(toks[k]));
      circuit->gate(*g, std::move(targets));
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!circuit) throw ParseError(1, "missing 'qubits N' header");
  return *std::move(circuit);
}

}  // namespace mbq
