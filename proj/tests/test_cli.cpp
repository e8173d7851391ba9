// Copyright 2026 atomsched contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CLI tests.  Most cases call run_cli in-process with captured streams; one
// smoke test execs the installed binary to cover main() and argv plumbing.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomsched/circuit.hpp"
#include "atomsched/cli.hpp"
#include "atomsched/pulse_scheduler.hpp"
#include "atomsched/sequence.hpp"
#include "helpers.hpp"

using namespace atomsched;
using atomsched::testing::absorption_showcase_circuit;
using atomsched::testing::cz_chain;
using atomsched::testing::TempDir;

namespace {

class CaptureStream {
 public:
  explicit CaptureStream(std::ostream& os) : os_(os), old_(os.rdbuf(buf_.rdbuf())) {}
  ~CaptureStream() { os_.rdbuf(old_); }
  CaptureStream(const CaptureStream&) = delete;
  CaptureStream& operator=(const CaptureStream&) = delete;
  [[nodiscard]] std::string str() const { return buf_.str(); }

 private:
  std::ostream& os_;
  std::streambuf* old_;
  std::ostringstream buf_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

std::string showcase_path(const TempDir& dir) {
  const std::string path = dir.file("showcase.json");
  save_circuit(absorption_showcase_circuit(), path);
  return path;
}

}  // namespace

TEST_CASE("schedule --strategy both prints the one-line comparison") {
  TempDir dir;
  CaptureStream out(std::cout);
  const int rc = run_cli({"schedule", "--input", showcase_path(dir), "--strategy", "both"});
  CHECK(rc == 0);
  CHECK(out.str() == "pulse_duration=14/1 gate_duration=22/1 gained=8 (delta_pi units)\n");
}

TEST_CASE("schedule round-trips the sequence through its JSON file") {
  TempDir dir;
  const std::string seq_path = dir.file("seq.json");
  CaptureStream out(std::cout);
  const int rc = run_cli(
      {"schedule", "--input", showcase_path(dir), "--strategy", "pulse", "--output", seq_path});
  CHECK(rc == 0);

  const PulseSequence loaded = load_sequence(seq_path);
  const TimingParams unit{Ticks(1), Ticks(1)};
  CHECK(loaded == schedule_pulse_level(absorption_showcase_circuit(), unit));

  // Custom timing flows through to the output.
  const int rc2 = run_cli({"schedule", "--input", showcase_path(dir), "--strategy", "pulse",
                           "--timing", "1/2,1/3", "--output", seq_path});
  CHECK(rc2 == 0);
  CHECK(load_sequence(seq_path).timing.delta_pi.str() == "1/2");
}

TEST_CASE("verify reports equivalence and exits 1 on mismatch") {
  TempDir dir;
  const std::string circuit_path = showcase_path(dir);
  const std::string seq_path = dir.file("seq.json");
  REQUIRE(run_cli({"schedule", "--input", circuit_path, "--strategy", "pulse", "--output",
                   seq_path}) == 0);

  {
    CaptureStream out(std::cout);
    CHECK(run_cli({"verify", "--circuit", circuit_path, "--sequence", seq_path}) == 0);
    const nlohmann::json report = nlohmann::json::parse(out.str());
    CHECK(report.at("equivalent") == true);
    CHECK(report.at("leakage").get<double>() < 1e-9);
  }

  // A sequence for a different circuit is not well-formed against this one.
  const std::string other_path = dir.file("other.json");
  save_circuit(cz_chain(1), other_path);
  const std::string other_seq = dir.file("other-seq.json");
  REQUIRE(run_cli({"schedule", "--input", other_path, "--strategy", "pulse", "--output",
                   other_seq}) == 0);
  CaptureStream err(std::cerr);
  CHECK(run_cli({"verify", "--circuit", circuit_path, "--sequence", other_seq}) == 1);
  CHECK(err.str().find("error:") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CaptureStream err(std::cerr);
  CaptureStream out(std::cout);
  CHECK(run_cli(std::vector<std::string>{}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({"schedule"}) == 2);  // missing required --input
  CHECK(run_cli({"schedule", "--input", "x.json", "--strategy", "quantum"}) == 2);
  CHECK(run_cli({"verify", "--circuit", "only-half.json"}) == 2);
}

TEST_CASE("malformed input exits 1 with a parse diagnostic") {
  TempDir dir;
  const std::string bad = dir.file("bad.json");
  write_file(bad, "{ this is not json");
  CaptureStream err(std::cerr);
  CHECK(run_cli({"schedule", "--input", bad}) == 1);
  CHECK(err.str().find("error: malformed input") != std::string::npos);

  CaptureStream err2(std::cerr);
  CHECK(run_cli({"schedule", "--input", dir.file("missing.json")}) == 1);
  CHECK(err2.str().find("error:") != std::string::npos);
}

TEST_CASE("validate splits practical-form circuits from the rest") {
  TempDir dir;
  CaptureStream out(std::cout);
  CHECK(run_cli({"validate", "--input", showcase_path(dir)}) == 0);

  // A bare CZ reaches its MCZ with both qubits in |0>: rejected.
  Circuit bare;
  bare.n_qubits = 2;
  bare.gates = {make_mcz({0, 1})};
  const std::string bare_path = dir.file("bare.json");
  save_circuit(bare, bare_path);
  CaptureStream out2(std::cout);
  CHECK(run_cli({"validate", "--input", bare_path}) == 1);
  CHECK(out2.str().find("criterion") != std::string::npos);
}

TEST_CASE("transpile emits the routed circuit and its stats") {
  TempDir dir;
  const std::string out_path = dir.file("routed.json");
  CaptureStream out(std::cout);
  const int rc = run_cli({"transpile", "--input", showcase_path(dir), "--lattice", "2,2",
                          "--output", out_path});
  CHECK(rc == 0);
  const nlohmann::json stats = nlohmann::json::parse(out.str());
  CHECK(stats.at("qubits") == 4);
  CHECK(stats.at("swaps_added").get<int>() >= 0);
  CHECK(stats.at("layers").get<int>() >= 1);
  const Circuit routed = load_circuit(out_path);
  CHECK(routed.n_qubits == 4);
}

TEST_CASE("render writes the timeline SVG") {
  TempDir dir;
  const std::string seq_path = dir.file("seq.json");
  REQUIRE(run_cli({"schedule", "--input", showcase_path(dir), "--strategy", "pulse",
                   "--output", seq_path}) == 0);

  const std::string svg_path = dir.file("timeline.svg");
  CHECK(run_cli({"render", "--input", seq_path, "--output", svg_path}) == 0);
  CHECK(slurp(svg_path).find("<svg") != std::string::npos);

  CaptureStream out(std::cout);
  CHECK(run_cli({"render", "--input", seq_path}) == 0);
  CHECK(out.str() == slurp(svg_path));
}

TEST_CASE("bench produces reproducible CSV artifacts") {
  TempDir dir;
  const std::string cfg_path = dir.file("bench.json");
  write_file(cfg_path,
             R"({"qubit_counts": [2], "min_mcz_counts": [1, 2], "circuits_per_point": 3,)"
             R"( "seed": 9})");

  const std::string dir_a = dir.file("run-a");
  const std::string dir_b = dir.file("run-b");
  std::filesystem::create_directories(dir_a);
  std::filesystem::create_directories(dir_b);

  CaptureStream err(std::cerr);
  CHECK(run_cli({"bench", "--config", cfg_path, "--output-dir", dir_a}) == 0);
  CHECK(run_cli({"bench", "--config", cfg_path, "--output-dir", dir_b}) == 0);

  const std::string records = slurp(dir_a + "/records.csv");
  CHECK(records.rfind("qubits,layers,dur_gate,dur_pulse,gained,seed,ok\n", 0) == 0);
  CHECK(records == slurp(dir_b + "/records.csv"));
  CHECK(slurp(dir_a + "/aggregate.csv") == slurp(dir_b + "/aggregate.csv"));
  CHECK(slurp(dir_a + "/per_qubit.csv") == slurp(dir_b + "/per_qubit.csv"));
  CHECK(slurp(dir_a + "/plot.json") == slurp(dir_b + "/plot.json"));
  CHECK(!slurp(dir_a + "/plot.svg").empty());

  // A different master seed produces different per-circuit seeds.
  const std::string dir_c = dir.file("run-c");
  std::filesystem::create_directories(dir_c);
  CHECK(run_cli({"bench", "--config", cfg_path, "--output-dir", dir_c, "--seed", "10"}) == 0);
  CHECK(slurp(dir_c + "/records.csv") != records);

  // The environment override wins over both config and flag.
  ::setenv("ATOMSCHED_SEED", "9", 1);
  const std::string dir_d = dir.file("run-d");
  std::filesystem::create_directories(dir_d);
  CHECK(run_cli({"bench", "--config", cfg_path, "--output-dir", dir_d, "--seed", "10"}) == 0);
  ::unsetenv("ATOMSCHED_SEED");
  CHECK(slurp(dir_d + "/records.csv") == records);
}

TEST_CASE("the installed binary answers over a pipe") {
  TempDir dir;
  const std::string cmd = std::string(ATOMSCHED_CLI_PATH) + " schedule --input " +
                          showcase_path(dir) + " --strategy both 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[256] = {0};
  const bool read_ok = ::fgets(buf, sizeof(buf), pipe) != nullptr;
  const int status = ::pclose(pipe);
  CHECK(read_ok);
  CHECK(status == 0);
  CHECK(std::string(buf) == "pulse_duration=14/1 gate_duration=22/1 gained=8 (delta_pi units)\n");
}
