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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "atomsched/circuit.hpp"
#include "atomsched/device.hpp"
#include "atomsched/ticks.hpp"

namespace atomsched {

/// Counter-free splittable PRNG (SplitMix64).  Every draw the generator
/// makes is documented at its call site so runs are reproducible bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  /// Uniform integer in [0, n), n >= 1, by rejection (no modulo bias).
  int below(int n);

 private:
  std::uint64_t state_;
};

/// SplitMix64's avalanche finalizer, used to derive per-circuit seeds.
std::uint64_t mix64(std::uint64_t x);

/// mix64 chain over (master, a, b, c); used as
/// derive_seed(master, qubits, min_mcz, repetition).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c);

struct GateMix {
  double p_cz = 0.5;
  double p_ccz = 0.5;
};

struct GenConfig {
  int n_qubits = 2;
  int min_mcz = 1;
  std::uint64_t seed = 0;
  GateMix gate_mix;
};

/// Draw order per circuit: (theta, phi) per qubit for the initial layer;
/// then per round: gate kind (skipped when only CZ is possible), the distinct
/// qubit picks, then (theta, phi) per chosen qubit ascending.  Rounds stop
/// once every qubit sits in at least one MCZ and the MCZ count reached
/// min_mcz.  Angles: theta uniform in [pi/4, pi], phi uniform in [0, 2pi).
Circuit generate_circuit(const GenConfig& cfg);

/// rows == 0 or cols == 0 means auto: the smallest rows*cols >= n with
/// rows = floor(sqrt(n)) and cols = ceil(n / rows), except that n >= 3
/// forces rows >= 2 so the lattice contains triangles (single rows are
/// triangle-free and cannot host a three-qubit gate).
struct LatticeSpec {
  int rows = 0;
  int cols = 0;
  bool auto_size() const { return rows <= 0 || cols <= 0; }
};

ConnectivityGraph lattice_for(const LatticeSpec& spec, int n_qubits);

struct BenchmarkRecord {
  int qubits = 0;  // logical qubits requested, the grouping key
  int layers = 0;  // multi-qubit layers after transpilation
  Ticks dur_gate{0};
  Ticks dur_pulse{0};
  double gained = 0.0;  // (dur_gate - dur_pulse) / delta_pi
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;
};

/// Per config: generate -> transpile -> schedule both ways -> check both
/// sequences are well-formed (and unitarily equivalent when the transpiled
/// size allows simulation) -> record durations.  A failing stage marks the
/// record instead of aborting the run.
std::vector<BenchmarkRecord> run_benchmark(const std::vector<GenConfig>& configs,
                                           const LatticeSpec& lattice,
                                           const TimingParams& timing);

struct AggregateRow {
  int qubits = 0;
  int layers = 0;
  double mean_gained = 0.0;
  int count = 0;
};

struct PerQubitRow {
  int qubits = 0;
  double gained_per_layer = 0.0;  // mean over layer groups of mean_gained/layers
  int groups = 0;
};

struct Aggregation {
  std::vector<AggregateRow> rows;      // sorted by (qubits, layers)
  std::vector<PerQubitRow> per_qubit;  // sorted by qubits
};

/// Failed records are skipped; rows ordered by key.
Aggregation aggregate(const std::vector<BenchmarkRecord>& records);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least squares y = slope*x + intercept with coefficient of determination.
LinearFit fit_line(const std::vector<std::pair<double, double>>& points);

void emit_csv(const std::vector<AggregateRow>& rows, const std::string& path);
void emit_csv(const std::vector<PerQubitRow>& rows, const std::string& path);

/// JSON series (one per qubit count) for external plotting; when svg_path is
/// non-empty, also writes a self-contained scatter of both aggregate views.
void emit_plot_data(const Aggregation& agg, const std::string& json_path,
                    const std::string& svg_path = "");

struct BenchConfig {
  std::vector<int> qubit_counts;
  std::vector<int> min_mcz_counts;
  int circuits_per_point = 75;
  std::uint64_t seed = 0;
  TimingParams timing;
  LatticeSpec lattice;
};

BenchConfig bench_config_from_json(const nlohmann::json& j);
BenchConfig load_bench_config(const std::string& path);

/// One GenConfig per (qubit count, min_mcz, repetition), seeds derived from
/// the master seed via derive_seed.
std::vector<GenConfig> expand_configs(const BenchConfig& cfg);

}  // namespace atomsched
