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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "mbq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = mbq::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(MBQ_SAMPLES_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::vector<nlohmann::json> lines(const std::string& text) {
  std::vector<nlohmann::json> v;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) v.push_back(nlohmann::json::parse(l));
  return v;
}

}  // namespace

TEST(Cli, RunBell) {
  const auto r = run({"run", sample("bell.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = lines(r.out);
  ASSERT_EQ(j.size(), 1u);
  const auto& amps = j[0]["amplitudes"];
  EXPECT_NEAR(amps[0][0].get<double>(), 0.7071067811865476, 1e-11);
  EXPECT_EQ(amps[1][0].get<double>(), 0.0);
  EXPECT_EQ(amps[2][0].get<double>(), 0.0);
  EXPECT_NEAR(amps[3][0].get<double>(), 0.7071067811865476, 1e-11);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"run", "/nonexistent/file.txt"}).code, 3);
  const auto bad = run({"run", temp_file("mbq_bad.txt", "qubits 1\nbogus 0\n")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"demo", "nope"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"verify", sample("h.txt"), "--trials", "0"}).code, 2);
  EXPECT_EQ(run({"verify", sample("h.txt"), "--mode", "fast"}).code, 2);
  EXPECT_EQ(run({"run", sample("h.txt"), "--force-outcomes", "1,x"}).code, 2);
  EXPECT_EQ(run({"run", sample("h.txt"), "--out", "/nonexistent/dir/out.jsonl"}).code, 3);
  EXPECT_EQ(run({"run", sample("h.txt"), "--help"}).code, 0);
}

TEST(Cli, VerifyStrict) {
  for (const char* f : {"h.txt", "cnot.txt"}) {
    const auto r = run({"verify", sample(f), "--mode", "strict", "--trials", "200"});
    EXPECT_EQ(r.code, 0) << f << r.err;
    EXPECT_TRUE(lines(r.out).back()["pass"].get<bool>());
  }
}

TEST(Cli, CorruptedProgramFails) {
  const auto r = run({"verify", sample("h.txt"), "--drop-feedforward", "--trials", "50"});
  EXPECT_EQ(r.code, 1);
  const auto summary = lines(r.out).back();
  EXPECT_FALSE(summary["pass"].get<bool>());
  EXPECT_FALSE(summary["failing"].empty());
}

TEST(Cli, Demos) {
  const auto dc = run({"demo", "densecoding", "--trials", "1000"});
  EXPECT_EQ(dc.code, 0);
  EXPECT_EQ(lines(dc.out).back()["errors"].get<int>(), 0);
  EXPECT_EQ(lines(dc.out).back()["roundtrips"].get<int>(), 4000);
  const auto walk = run({"demo", "walk", "--trials", "40000"});
  EXPECT_EQ(walk.code, 0);
  EXPECT_LE(std::abs(lines(walk.out).back()["z"].get<double>()), 4.0);
  const auto gad = run({"demo", "gadgets", "--trials", "200"});
  EXPECT_EQ(gad.code, 0);
  for (const auto& j : lines(gad.out)) {
    if (j["type"] == "gadget") {
      EXPECT_EQ(j["passed"], j["trials"]);
    }
  }
}

TEST(Cli, CompileEmitsProgram) {
  const auto r = run({"compile", sample("h.txt"), "--mode", "strict"});
  ASSERT_EQ(r.code, 0);
  const auto j = lines(r.out);
  EXPECT_EQ(j[0]["type"], "program");
  EXPECT_EQ(j[0]["mode"], "strict");
  const auto measures = std::count_if(j.begin() + 1, j.end(), [](const auto& x) { return x["op"] == "measure"; });
  EXPECT_EQ(static_cast<std::size_t>(measures), j[0]["measurements"].get<std::size_t>());
}

TEST(Cli, ForcedOutcomesSteerRun) {
  const auto path = temp_file("mbq_meas.txt", "qubits 1\nh 0\nmeasure xp:0\n");
  for (const char* f : {"1", "-1"}) {
    const auto r = run({"run", path, "--force-outcomes", f});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(lines(r.out)[0]["outcomes"][0].get<int>(), std::stoi(f));
  }
}

TEST(Cli, SeedFlagBeatsEnvironment) {
  const auto path = temp_file("mbq_meas2.txt", "qubits 1\nh 0\nmeasure xp:0\n");
  ::setenv("MBQ_SEED", "5", 1);
  const auto env = run({"run", path, "--trials", "20"});
  const auto flag5 = run({"run", path, "--trials", "20", "--seed", "5"});
  const auto flag6 = run({"run", path, "--trials", "20", "--seed", "6"});
  ::setenv("MBQ_SEED", "not-a-number", 1);
  const auto broken = run({"run", path});
  ::unsetenv("MBQ_SEED");
  EXPECT_EQ(env.out, flag5.out);
  EXPECT_NE(flag5.out, flag6.out);
  EXPECT_EQ(broken.code, 2);
}

TEST(Cli, ByteIdenticalRepeats) {
  const std::vector<std::vector<std::string>> cmds = {
      {"run", sample("bell.txt"), "--trials", "5"},
      {"compile", sample("bell.txt"), "--mode", "strict"},
      {"verify", sample("bell.txt"), "--mode", "strict", "--trials", "30", "--seed", "9"},
      {"demo", "gadgets", "--trials", "20", "--seed", "3"},
      {"demo", "walk", "--trials", "500", "--seed", "3"},
      {"demo", "densecoding", "--trials", "50", "--seed", "3"}};
  for (const auto& c : cmds) {
    const auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << c[0];
    EXPECT_FALSE(a.out.empty());
  }
}

TEST(Cli, OutFile) {
  const auto path = (std::filesystem::temp_directory_path() / "mbq_out.jsonl").string();
  const auto r = run({"run", sample("bell.txt"), "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string line;
  ASSERT_TRUE(static_cast<bool>(std::getline(in, line)));
  EXPECT_NE(line.find("\"amplitudes\""), std::string::npos);
}
