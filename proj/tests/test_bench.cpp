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

// Benchmark harness tests: the RNG against its published reference stream,
// the circuit generator against its documented draw recipe, and the
// aggregation/emission pipeline against hand-computed goldens.

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "atomsched/bench.hpp"
#include "atomsched/errors.hpp"
#include "atomsched/sequence.hpp"
#include "helpers.hpp"

using namespace atomsched;
using atomsched::testing::TempDir;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int mcz_count(const Circuit& c) {
  int n = 0;
  for (const Gate& g : c.gates) n += std::holds_alternative<MczGate>(g) ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("splitmix64 matches the published reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == UINT64_C(0xE220A8397B1DCDAF));
  CHECK(rng.next() == UINT64_C(0x6E789E6AA1B965F4));
  CHECK(rng.next() == UINT64_C(0x06C45D188009454F));

  SplitMix64 u(123);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  std::set<int> seen;
  SplitMix64 b(7);
  for (int i = 0; i < 200; ++i) {
    const int k = b.below(5);
    CHECK(k >= 0);
    CHECK(k < 5);
    seen.insert(k);
  }
  CHECK(seen.size() == 5);
}

TEST_CASE("seed derivation separates neighboring coordinates") {
  CHECK(derive_seed(0, 0, 0, 0) == derive_seed(0, 0, 0, 0));
  std::set<std::uint64_t> seeds;
  seeds.insert(derive_seed(0, 0, 0, 0));
  seeds.insert(derive_seed(0, 0, 0, 1));
  seeds.insert(derive_seed(0, 0, 1, 0));
  seeds.insert(derive_seed(0, 1, 0, 0));
  seeds.insert(derive_seed(1, 0, 0, 0));
  CHECK(seeds.size() == 5);
  CHECK(mix64(1) != mix64(2));
  CHECK(mix64(1) != 1);
}

TEST_CASE("generated circuits follow the documented recipe") {
  GenConfig two;
  two.n_qubits = 2;
  two.min_mcz = 5;
  two.seed = 99;
  const Circuit c2 = generate_circuit(two);
  CHECK(mcz_count(c2) == 5);
  for (const Gate& g : c2.gates) {
    if (const auto* m = std::get_if<MczGate>(&g)) CHECK(m->qubits.size() == 2);
  }
  REQUIRE(c2.gates.size() >= 2);
  CHECK(std::get<RGate>(c2.gates[0]).qubit == 0);
  CHECK(std::get<RGate>(c2.gates[1]).qubit == 1);

  CHECK(circuit_to_json(generate_circuit(two)) == circuit_to_json(c2));
  GenConfig reseeded = two;
  reseeded.seed = 100;
  CHECK(circuit_to_json(generate_circuit(reseeded)) != circuit_to_json(c2));

  // Structure: initial rotations on every qubit, then MCZ groups each
  // followed by fresh rotations on exactly its members, ascending.
  GenConfig five;
  five.n_qubits = 5;
  five.min_mcz = 4;
  five.seed = 7;
  const Circuit c5 = generate_circuit(five);
  std::set<QubitIndex> in_mcz;
  for (int q = 0; q < 5; ++q) {
    CHECK(std::get<RGate>(c5.gates[static_cast<std::size_t>(q)]).qubit == q);
  }
  std::size_t i = 5;
  int blocks = 0;
  while (i < c5.gates.size()) {
    const auto& m = std::get<MczGate>(c5.gates[i]);
    CHECK((m.qubits.size() == 2 || m.qubits.size() == 3));
    in_mcz.insert(m.qubits.begin(), m.qubits.end());
    ++blocks;
    ++i;
    std::vector<QubitIndex> rotated;
    for (QubitIndex q : m.qubits) {
      const auto& r = std::get<RGate>(c5.gates[i]);
      rotated.push_back(r.qubit);
      (void)q;
      ++i;
    }
    CHECK(std::is_sorted(rotated.begin(), rotated.end()));
    CHECK(std::set<QubitIndex>(rotated.begin(), rotated.end()) ==
          std::set<QubitIndex>(m.qubits.begin(), m.qubits.end()));
  }
  CHECK(blocks >= 4);
  CHECK(in_mcz.size() == 5);

  // Angle ranges for every rotation drawn.
  for (const Gate& g : c5.gates) {
    if (const auto* r = std::get_if<RGate>(&g)) {
      CHECK(r->theta >= std::numbers::pi / 4.0);
      CHECK(r->theta <= std::numbers::pi);
      CHECK(r->phi >= 0.0);
      CHECK(r->phi < 2.0 * std::numbers::pi);
    }
  }

  // With three or more qubits the default mix produces CCZs too.
  bool ccz_seen = false;
  for (std::uint64_t seed = 0; seed < 5 && !ccz_seen; ++seed) {
    GenConfig g3;
    g3.n_qubits = 4;
    g3.min_mcz = 6;
    g3.seed = seed;
    for (const Gate& g : generate_circuit(g3).gates) {
      if (const auto* m = std::get_if<MczGate>(&g)) ccz_seen |= m->qubits.size() == 3;
    }
  }
  CHECK(ccz_seen);

  GenConfig bad;
  bad.n_qubits = 1;
  CHECK_THROWS_AS(generate_circuit(bad), Error);
}

TEST_CASE("lattice autosizing keeps triangles available from three qubits up") {
  CHECK(lattice_for(LatticeSpec{}, 2).size() == 2);
  CHECK(lattice_for(LatticeSpec{}, 3).size() == 4);
  CHECK(lattice_for(LatticeSpec{}, 7).size() == 8);
  CHECK(lattice_for(LatticeSpec{}, 8).size() == 8);
  CHECK(lattice_for(LatticeSpec{3, 3}, 2).size() == 9);

  for (int n = 3; n <= 8; ++n) {
    const ConnectivityGraph g = lattice_for(LatticeSpec{}, n);
    CHECK(g.size() >= n);
    bool triangle = false;
    for (int a = 0; a < g.size() && !triangle; ++a) {
      for (int b : g.neighbors(a)) {
        for (int c : g.neighbors(b)) {
          triangle |= c != a && g.adjacent(a, c);
        }
      }
    }
    CHECK(triangle);
  }
}

TEST_CASE("benchmark records are reproducible and dominated") {
  BenchConfig cfg;
  cfg.qubit_counts = {2, 3};
  cfg.min_mcz_counts = {1, 2};
  cfg.circuits_per_point = 4;
  cfg.seed = 42;

  const std::vector<GenConfig> configs = expand_configs(cfg);
  REQUIRE(configs.size() == 16);
  CHECK(configs[0].seed == derive_seed(42, 2, 1, 0));
  CHECK(configs[5].seed == derive_seed(42, 2, 2, 1));
  CHECK(configs[15].seed == derive_seed(42, 3, 2, 3));

  const std::vector<BenchmarkRecord> records = run_benchmark(configs, cfg.lattice, cfg.timing);
  REQUIRE(records.size() == configs.size());
  for (const BenchmarkRecord& rec : records) {
    CAPTURE(rec.seed);
    CHECK(rec.ok);
    CHECK(rec.error.empty());
    CHECK(rec.layers >= 1);
    CHECK(rec.gained >= 0.0);
    CHECK(rec.dur_gate >= rec.dur_pulse);
  }

  // Same config, second run: field-for-field identical records.
  const std::vector<BenchmarkRecord> again = run_benchmark(configs, cfg.lattice, cfg.timing);
  REQUIRE(again.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].qubits == again[i].qubits);
    CHECK(records[i].layers == again[i].layers);
    CHECK(records[i].dur_gate == again[i].dur_gate);
    CHECK(records[i].dur_pulse == again[i].dur_pulse);
    CHECK(records[i].gained == again[i].gained);
    CHECK(records[i].seed == again[i].seed);
  }

  // Two-qubit circuits with equal layer counts cost the same in both
  // schedulers: duration is a function of depth alone.
  for (const BenchmarkRecord& a : records) {
    for (const BenchmarkRecord& b : records) {
      if (a.qubits == 2 && b.qubits == 2 && a.layers == b.layers) {
        CHECK(a.dur_pulse == b.dur_pulse);
        CHECK(a.dur_gate == b.dur_gate);
      }
    }
  }
}

TEST_CASE("aggregation means by group and skips failed records") {
  const auto rec = [](int q, int layers, double gained, bool ok) {
    BenchmarkRecord r;
    r.qubits = q;
    r.layers = layers;
    r.gained = gained;
    r.ok = ok;
    return r;
  };
  const std::vector<BenchmarkRecord> records = {
      rec(2, 3, 6.0, true),  rec(2, 3, 8.0, true),   rec(2, 5, 10.0, true),
      rec(3, 2, 9.0, true),  rec(2, 3, 100.0, false),
  };
  const Aggregation agg = aggregate(records);

  REQUIRE(agg.rows.size() == 3);
  CHECK(agg.rows[0].qubits == 2);
  CHECK(agg.rows[0].layers == 3);
  CHECK(agg.rows[0].mean_gained == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(agg.rows[0].count == 2);
  CHECK(agg.rows[1].layers == 5);
  CHECK(agg.rows[1].mean_gained == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(agg.rows[2].qubits == 3);
  CHECK(agg.rows[2].mean_gained == doctest::Approx(9.0).epsilon(1e-12));

  REQUIRE(agg.per_qubit.size() == 2);
  CHECK(agg.per_qubit[0].qubits == 2);
  CHECK(agg.per_qubit[0].groups == 2);
  // mean(7/3, 10/5)
  CHECK(agg.per_qubit[0].gained_per_layer == doctest::Approx(13.0 / 6.0).epsilon(1e-12));
  CHECK(agg.per_qubit[1].qubits == 3);
  CHECK(agg.per_qubit[1].gained_per_layer == doctest::Approx(4.5).epsilon(1e-12));

  CHECK(aggregate({}).rows.empty());
  CHECK(aggregate({}).per_qubit.empty());
}

TEST_CASE("line fitting reproduces the hand-computed example") {
  const LinearFit fit = fit_line({{0.0, 0.0}, {1.0, 1.0}, {2.0, 1.0}});
  CHECK(fit.slope == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(fit.r2 == doctest::Approx(0.75).epsilon(1e-12));

  const LinearFit exact = fit_line({{1.0, 2.0}, {2.0, 4.0}, {3.0, 6.0}});
  CHECK(exact.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(exact.intercept == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exact.r2 == 1.0);

  const LinearFit flat = fit_line({{0.0, 5.0}, {1.0, 5.0}});
  CHECK(flat.slope == 0.0);
  CHECK(flat.intercept == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(flat.r2 == 1.0);

  CHECK(fit_line({}).r2 == 0.0);
}

TEST_CASE("csv emission is byte-exact and repeatable") {
  TempDir dir;
  AggregateRow a;
  a.qubits = 2;
  a.layers = 3;
  a.mean_gained = 7.0;
  a.count = 2;
  AggregateRow b;
  b.qubits = 3;
  b.layers = 2;
  b.mean_gained = 4.5;
  b.count = 1;

  emit_csv(std::vector<AggregateRow>{a, b}, dir.file("agg.csv"));
  CHECK(slurp(dir.file("agg.csv")) == "qubits,layers,mean_gained,count\n2,3,7,2\n3,2,4.5,1\n");

  PerQubitRow p;
  p.qubits = 2;
  p.gained_per_layer = 13.0 / 6.0;
  p.groups = 2;
  emit_csv(std::vector<PerQubitRow>{p}, dir.file("pq.csv"));
  CHECK(slurp(dir.file("pq.csv")) == "qubits,gained_per_layer\n2,2.16666666667\n");

  emit_csv(std::vector<AggregateRow>{}, dir.file("empty.csv"));
  CHECK(slurp(dir.file("empty.csv")) == "qubits,layers,mean_gained,count\n");

  emit_csv(std::vector<AggregateRow>{a, b}, dir.file("again.csv"));
  CHECK(slurp(dir.file("again.csv")) == slurp(dir.file("agg.csv")));

  CHECK_THROWS_AS(emit_csv(std::vector<AggregateRow>{a}, dir.file("no/such/dir/x.csv")), Error);
}

TEST_CASE("plot data carries one series per qubit count") {
  BenchConfig cfg;
  cfg.qubit_counts = {2, 3};
  cfg.min_mcz_counts = {1, 2, 3};
  cfg.circuits_per_point = 3;
  cfg.seed = 5;
  const Aggregation agg =
      aggregate(run_benchmark(expand_configs(cfg), cfg.lattice, cfg.timing));

  TempDir dir;
  emit_plot_data(agg, dir.file("plot.json"), dir.file("plot.svg"));
  const nlohmann::json doc = nlohmann::json::parse(slurp(dir.file("plot.json")));
  REQUIRE(doc.contains("series"));
  CHECK(doc.at("series").size() == 2);
  for (const auto& series : doc.at("series")) {
    CHECK(series.contains("qubits"));
    CHECK(!series.at("points").empty());
  }
  CHECK(doc.at("per_qubit").size() == 2);

  const std::string svg = slurp(dir.file("plot.svg"));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("2q</text>") != std::string::npos);
  CHECK(svg.find("3q</text>") != std::string::npos);
}

TEST_CASE("bench config parsing applies defaults and rejects gaps") {
  const nlohmann::json full = {
      {"qubit_counts", {2, 3, 4}},  {"min_mcz_counts", {1, 2}},
      {"circuits_per_point", 10},   {"seed", 77},
      {"delta_pi", "1/2"},          {"delta_t", "1/3"},
      {"lattice", {{"rows", 2}, {"cols", 3}}},
  };
  const BenchConfig cfg = bench_config_from_json(full);
  CHECK(cfg.qubit_counts == std::vector<int>{2, 3, 4});
  CHECK(cfg.min_mcz_counts == std::vector<int>{1, 2});
  CHECK(cfg.circuits_per_point == 10);
  CHECK(cfg.seed == 77);
  CHECK(cfg.timing.delta_pi.str() == "1/2");
  CHECK(cfg.timing.delta_t.str() == "1/3");
  CHECK(cfg.lattice.rows == 2);
  CHECK(cfg.lattice.cols == 3);

  const nlohmann::json minimal = {{"qubit_counts", {2}}, {"min_mcz_counts", {1}}};
  const BenchConfig defaults = bench_config_from_json(minimal);
  CHECK(defaults.circuits_per_point == 75);
  CHECK(defaults.seed == 0);
  CHECK(defaults.lattice.auto_size());
  CHECK(defaults.timing.delta_pi == Ticks(1));

  const nlohmann::json auto_lattice = {
      {"qubit_counts", {2}}, {"min_mcz_counts", {1}}, {"lattice", "auto"}};
  CHECK(bench_config_from_json(auto_lattice).lattice.auto_size());

  CHECK_THROWS_AS(bench_config_from_json({{"min_mcz_counts", {1}}}), ParseError);
  CHECK_THROWS_AS(bench_config_from_json({{"qubit_counts", {2}}}), ParseError);
  CHECK_THROWS_AS(bench_config_from_json(nlohmann::json{
                      {"qubit_counts", {2}},
                      {"min_mcz_counts", {1}},
                      {"circuits_per_point", 0},
                  }),
                  ParseError);
  CHECK_THROWS_AS(bench_config_from_json(nlohmann::json::array()), ParseError);

  TempDir dir;
  {
    std::ofstream out(dir.file("bad.json"));
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_bench_config(dir.file("bad.json")), ParseError);
  CHECK_THROWS_AS(load_bench_config(dir.file("missing.json")), Error);
}
