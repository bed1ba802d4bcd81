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

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbq/mbq.hpp"

namespace mbq::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

struct RunConfig {
  std::uint64_t seed = 0;
  std::optional<std::size_t> trials;
  double tol = 1e-9;
  PrimitiveMode mode = PrimitiveMode::Extended;
  std::string out;
  std::vector<int> forced;
  bool drop_feedforward = false;

  std::size_t trials_or(std::size_t fallback) const { return trials.value_or(fallback); }
};

inline json amplitudes_json(const StateVector& s) {
  json a = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) a.push_back({round12(s[i].real()), round12(s[i].imag())});
  return a;
}

inline void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

/// Thrown for unreadable input files; maps to exit code 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path);
  return ss.str();
}

inline Circuit load_circuit(const std::string& path) { return parse_circuit(read_file(path)); }

/// Direct simulation from |0...0>, one record per trial.
inline int cmd_run(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const Circuit c = load_circuit(path);
  const std::size_t trials = cfg.trials_or(1);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t seed = Rng::derive(cfg.seed, t);
    Rng rng(seed);
    const DirectRun r = simulate(c, StateVector::zeros(c.num_qubits()), rng, cfg.forced);
    emit(out, {{"type", "run"},
               {"trial", t},
               {"seed", seed},
               {"qubits", c.num_qubits()},
               {"amplitudes", amplitudes_json(r.state)},
               {"outcomes", r.outcomes}});
  }
  return kOk;
}

inline int cmd_compile(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  out << program_jsonl(compile(load_circuit(path), cfg.mode));
  return kOk;
}

inline int cmd_verify(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  const Circuit c = load_circuit(path);
  const MeasurementProgram p = compile(c, cfg.mode);
  ExecOptions opts;
  opts.forced = cfg.forced;
  opts.drop_feedforward = cfg.drop_feedforward;
  const EquivalenceReport rep = check_equivalence(c, p, cfg.trials_or(200), cfg.tol, cfg.seed, opts);
  for (const auto& t : rep.trials) {
    emit(out, {{"type", "trial"},
               {"id", t.id},
               {"seed", t.seed},
               {"fidelity", round12(t.fidelity)},
               {"pass", t.pass},
               {"records", t.records}});
  }
  json hist = json::array();
  for (const auto& h : rep.histogram) hist.push_back({h[0], h[1]});
  emit(out, {{"type", "verify"},
             {"mode", std::string(mode_name(p.mode))},
             {"trials", rep.trials.size()},
             {"tol", cfg.tol},
             {"measurements", p.measurement_count()},
             {"ancillas", p.ancillas},
             {"min_fidelity", round12(rep.min_fidelity)},
             {"failing", rep.failing},
             {"histogram", hist},
             {"pass", rep.pass()}});
  return rep.pass() ? kOk : kVerifyFailed;
}

inline int demo_densecoding(const RunConfig& cfg, std::ostream& out) {
  const std::size_t trials = cfg.trials_or(1000);
  std::vector<StateVector> encoded;
  for (Tactic t : kAllTactics) {
    const auto [s, alpha] = tactic_parameters(t);
    encoded.push_back(dealer_state(s, alpha));
  }
  double gram_dev = 0.0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      gram_dev = std::max(gram_dev, std::abs(encoded[a].inner(encoded[b]) - cplx(a == b ? 1.0 : 0.0, 0.0)));
    }
  }
  std::size_t total_errors = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    const auto choice = tactics_choice(kAllTactics[k]);
    std::size_t errors = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(Rng::derive(cfg.seed, k * trials + t));
      if (encode_decode(choice.bits, rng).decoded != choice.bits) ++errors;
    }
    total_errors += errors;
    emit(out, {{"type", "densecoding"},
               {"tactic", std::string(tactic_name(choice.label))},
               {"bits", choice.bits},
               {"trials", trials},
               {"errors", errors}});
  }
  emit(out, {{"type", "summary"},
             {"demo", "densecoding"},
             {"roundtrips", 4 * trials},
             {"errors", total_errors},
             {"gram_max_deviation", round12(gram_dev)},
             {"pass", total_errors == 0}});
  return total_errors == 0 ? kOk : kVerifyFailed;
}

inline int demo_walk(const RunConfig& cfg, std::ostream& out) {
  const std::size_t trials = cfg.trials_or(40000);
  constexpr std::size_t kMaxSteps = 200;
  std::vector<std::size_t> hist(kMaxSteps + 1, 0);
  double sum = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(Rng::derive(cfg.seed, t));
    const auto rec = random_walk_cleanup(Pauli::I, Pauli::I, rng, kMaxSteps);
    ++hist[rec.steps];
    sum += static_cast<double>(rec.steps);
  }
  std::size_t last = 1;
  for (std::size_t s = 1; s <= kMaxSteps; ++s) {
    if (hist[s]) last = s;
  }
  json counts = json::array();
  json expected = json::array();
  for (std::size_t s = 1; s <= last; ++s) {
    counts.push_back(hist[s]);
    expected.push_back(round12(static_cast<double>(trials) * 0.25 * std::pow(0.75, static_cast<double>(s - 1))));
  }
  const double n = static_cast<double>(trials);
  const double mean = sum / n;
  const double sigma = std::sqrt(12.0 / n);  // geometric(1/4): variance (1-p)/p^2
  const double z = (mean - 4.0) / sigma;
  const bool ok = std::abs(z) <= 4.0;
  emit(out, {{"type", "walk"}, {"trials", trials}, {"histogram", counts}, {"expected", expected}});
  emit(out, {{"type", "summary"},
             {"demo", "walk"},
             {"mean_steps", round12(mean)},
             {"expected_mean", 4.0},
             {"sigma", round12(sigma)},
             {"z", round12(z)},
             {"first_step_fraction", round12(static_cast<double>(hist[1]) / n)},
             {"pass", ok}});
  return ok ? kOk : kVerifyFailed;
}

inline int demo_gadgets(const RunConfig& cfg, std::ostream& out) {
  const std::size_t trials = cfg.trials_or(200);
  const double tol = std::min(cfg.tol, 1e-10);
  bool all = true;
  for (std::size_t k = 0; k < kAllGadgetKinds.size(); ++k) {
    const GadgetKind kind = kAllGadgetKinds[k];
    std::size_t passed = 0;
    double min_f = 1.0;
    for (std::size_t t = 0; t < trials; ++t) {
      Rng rng(Rng::derive(cfg.seed, k * trials + t));
      const std::size_t n = gadget_logical_qubits(kind);
      const StateVector psi = StateVector::random(n, rng);
      GadgetResult r = [&] {
        switch (kind) {
          case GadgetKind::SigmaH: return gadget_sigma_h(psi, 0, rng);
          case GadgetKind::SigmaHSwapped: return gadget_sigma_h(psi, 0, rng, {}, SigmaHVariant::Swapped);
          case GadgetKind::Sigma: return gadget_sigma(psi, 0, rng);
          case GadgetKind::SigmaXPrepared: return gadget_sigma(psi, 0, rng, {}, SigmaForm::XPrepared);
          case GadgetKind::SigmaHPrefixed: return gadget_sigma(psi, 0, rng, {}, SigmaForm::HPrefixed);
          case GadgetKind::SigmaT: return gadget_sigma_t(psi, 0, rng);
          case GadgetKind::SigmaTGForm: return gadget_sigma_t(psi, 0, rng, {}, SigmaTForm::GForm);
          case GadgetKind::SigmaG: return gadget_sigma_g(psi, 0, rng);
          case GadgetKind::Cnot: return gadget_cnot(psi, 0, 1, rng);
        }
        throw InternalError("unknown gadget kind");
      }();
      const double f = n == 2 ? gadget_contract_fidelity(r, psi, {0, 1}) : gadget_contract_fidelity(r, psi, {0});
      min_f = std::min(min_f, f);
      passed += f >= 1.0 - tol;
    }
    all = all && passed == trials;
    emit(out, {{"type", "gadget"},
               {"kind", std::string(gadget_name(kind))},
               {"trials", trials},
               {"passed", passed},
               {"min_fidelity", round12(min_f)}});
  }
  emit(out, {{"type", "summary"}, {"demo", "gadgets"}, {"pass", all}});
  return all ? kOk : kVerifyFailed;
}

inline int cmd_demo(const std::string& name, const RunConfig& cfg, std::ostream& out) {
  if (name == "densecoding") return demo_densecoding(cfg, out);
  if (name == "walk") return demo_walk(cfg, out);
  if (name == "gadgets") return demo_gadgets(cfg, out);
  throw InputError("unknown demo '" + name + "' (expected densecoding, walk or gadgets)");
}

inline std::vector<int> parse_forced(const std::string& list) {
  std::vector<int> v;
  std::stringstream ss(list);
  for (std::string tok; std::getline(ss, tok, ',');) {
    if (tok == "1" || tok == "+1" || tok == "+") {
      v.push_back(1);
    } else if (tok == "-1" || tok == "-") {
      v.push_back(-1);
    } else {
      throw InputError("forced outcomes are comma-separated +1/-1 values, got '" + tok + "'");
    }
  }
  return v;
}

/// Full command line handling. Reports go to `out` (or --out), diagnostics to `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-based tactics simulator"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<std::uint64_t> seed;
  std::size_t trials = 0;
  std::string mode = "extended";
  std::string forced;
  std::string path;
  std::string demo;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed (default: $MBQ_SEED or 0)");
    sub->add_option("--trials", trials, "number of trials")->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.tol, "fidelity tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--mode", mode, "primitive set")->check(CLI::IsMember({"extended", "strict"}));
    sub->add_option("--out", cfg.out, "write output to this file");
    sub->add_option("--force-outcomes", forced, "comma-separated eigenvalues for the first measurements");
    sub->add_flag("--drop-feedforward", cfg.drop_feedforward)->group("");
  };
  auto* run = app.add_subcommand("run", "simulate a circuit directly");
  auto* comp = app.add_subcommand("compile", "lower a circuit to a measurement program");
  auto* ver = app.add_subcommand("verify", "compile and check equivalence on random inputs");
  auto* dem = app.add_subcommand("demo", "run a built-in demonstration");
  for (auto* s : {run, comp, ver}) {
    s->add_option("circuit", path, "circuit file")->required();
    common(s);
  }
  dem->add_option("name", demo, "densecoding, walk or gadgets")->required();
  common(dem);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (seed) {
      cfg.seed = *seed;
    } else if (const char* env = std::getenv("MBQ_SEED")) {
      try {
        std::size_t used = 0;
        cfg.seed = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw InputError(std::string("MBQ_SEED is not an unsigned integer: ") + env);
      }
    }
    if (trials > 0) cfg.trials = trials;
    cfg.mode = *mode_from_name(mode);
    if (!forced.empty()) cfg.forced = parse_forced(forced);

    std::ostringstream buf;
    int code = kOk;
    if (*run) code = cmd_run(path, cfg, buf);
    if (*comp) code = cmd_compile(path, cfg, buf);
    if (*ver) code = cmd_verify(path, cfg, buf);
    if (*dem) code = cmd_demo(demo, cfg, buf);

    if (cfg.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!(f << buf.str())) throw IoError("cannot write " + cfg.out);
    }
    return code;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace mbq::cli
