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

#include "atomsched/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "atomsched/errors.hpp"
#include "atomsched/gate_scheduler.hpp"
#include "atomsched/pulse_scheduler.hpp"
#include "atomsched/sequence.hpp"
#include "atomsched/transpiler.hpp"
#include "atomsched/verifier.hpp"

namespace atomsched {

namespace {

constexpr double kPi = std::numbers::pi;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  return mix64(state_);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

int SplitMix64::below(int n) {
  if (n < 1) throw Error("SplitMix64::below: n must be positive");
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % bound);
  for (;;) {
    const std::uint64_t v = next();
    if (v < limit) return static_cast<int>(v % bound);
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ a);
  s = mix64(s ^ b);
  s = mix64(s ^ c);
  return s;
}

Circuit generate_circuit(const GenConfig& cfg) {
  if (cfg.n_qubits < 2) throw Error("generate_circuit: need at least 2 qubits");
  if (cfg.min_mcz < 1) throw Error("generate_circuit: min_mcz must be at least 1");
  if (cfg.gate_mix.p_cz < 0.0 || cfg.gate_mix.p_ccz < 0.0 ||
      std::abs(cfg.gate_mix.p_cz + cfg.gate_mix.p_ccz - 1.0) > 1e-9) {
    throw Error("generate_circuit: gate mix probabilities must be nonnegative and sum to 1");
  }

  SplitMix64 rng(cfg.seed);
  auto draw_r = [&](QubitIndex q) {
    const double theta = kPi / 4.0 + rng.uniform() * (3.0 * kPi / 4.0);
    const double phi = rng.uniform() * 2.0 * kPi;
    return make_r(q, theta, phi);
  };

  Circuit out;
  out.n_qubits = cfg.n_qubits;
  for (QubitIndex q = 0; q < cfg.n_qubits; ++q) out.gates.push_back(draw_r(q));

  const bool ccz_possible = cfg.n_qubits >= 3 && cfg.gate_mix.p_ccz > 0.0;
  const bool cz_possible = cfg.gate_mix.p_cz > 0.0 || !ccz_possible;
  std::vector<bool> covered(static_cast<std::size_t>(cfg.n_qubits), false);
  int covered_count = 0;
  int mcz_count = 0;
  const int round_limit = cfg.min_mcz + 100 * cfg.n_qubits + 1000;
  for (int round = 0; covered_count < cfg.n_qubits || mcz_count < cfg.min_mcz; ++round) {
    if (round > round_limit) throw Error("generate_circuit: coverage not reached");
    bool ccz = false;
    if (ccz_possible && cz_possible) {
      ccz = rng.uniform() < cfg.gate_mix.p_ccz;
    } else if (ccz_possible) {
      ccz = true;
    }
    const int arity = ccz ? 3 : 2;
    std::vector<QubitIndex> avail(static_cast<std::size_t>(cfg.n_qubits));
    for (int q = 0; q < cfg.n_qubits; ++q) avail[static_cast<std::size_t>(q)] = q;
    std::vector<QubitIndex> chosen;
    for (int i = 0; i < arity; ++i) {
      const int idx = rng.below(static_cast<int>(avail.size()));
      chosen.push_back(avail[static_cast<std::size_t>(idx)]);
      avail.erase(avail.begin() + idx);
    }
    out.gates.push_back(make_mcz(chosen));
    ++mcz_count;
    std::sort(chosen.begin(), chosen.end());
    for (QubitIndex q : chosen) {
      if (!covered[static_cast<std::size_t>(q)]) {
        covered[static_cast<std::size_t>(q)] = true;
        ++covered_count;
      }
      out.gates.push_back(draw_r(q));
    }
  }
  return out;
}

ConnectivityGraph lattice_for(const LatticeSpec& spec, int n_qubits) {
  if (!spec.auto_size()) return triangular_lattice(spec.rows, spec.cols);
  int rows = static_cast<int>(std::sqrt(static_cast<double>(n_qubits)));
  if (rows < 1) rows = 1;
  // A single row is triangle-free, which would make any 3-qubit gate
  // unroutable; from 3 qubits on, use at least two rows (every 2x2 patch of
  // the lattice is a clique).
  if (n_qubits >= 3 && rows < 2) rows = 2;
  const int cols = (n_qubits + rows - 1) / rows;
  return triangular_lattice(rows, cols);
}

std::vector<BenchmarkRecord> run_benchmark(const std::vector<GenConfig>& configs,
                                           const LatticeSpec& lattice,
                                           const TimingParams& timing) {
  check_timing(timing);
  std::vector<BenchmarkRecord> records;
  records.reserve(configs.size());
  for (const GenConfig& cfg : configs) {
    BenchmarkRecord rec;
    rec.qubits = cfg.n_qubits;
    rec.seed = cfg.seed;
    try {
      const Circuit circuit = generate_circuit(cfg);
      const ConnectivityGraph graph = lattice_for(lattice, cfg.n_qubits);
      auto [transpiled, stats] = transpile(circuit, graph);
      rec.layers = stats.layers;

      const PulseSequence pulse = schedule_pulse_level(transpiled, timing);
      const PulseSequence gate = schedule_gate_level(transpiled, timing);

      const WellformedReport wf_pulse = check_wellformed(pulse, transpiled);
      if (!wf_pulse.ok()) throw Error("pulse sequence ill-formed\n" + wf_pulse.str());
      const WellformedReport wf_gate = check_wellformed(gate, transpiled);
      if (!wf_gate.ok()) throw Error("gate sequence ill-formed\n" + wf_gate.str());
      const WellformedReport busy = check_gate_level_busy(gate);
      if (!busy.ok()) {
        throw Error("gate sequence violates whole-block busy rule\n" + busy.str());
      }
      if (transpiled.n_qubits <= 6) {
        const EquivalenceResult ep = check_equivalence(transpiled, pulse);
        if (!ep.equivalent) throw Error("pulse sequence not equivalent to circuit");
        const EquivalenceResult eg = check_equivalence(transpiled, gate);
        if (!eg.equivalent) throw Error("gate sequence not equivalent to circuit");
      }

      rec.dur_pulse = duration(pulse);
      rec.dur_gate = duration(gate);
      rec.gained = ((rec.dur_gate - rec.dur_pulse) / timing.delta_pi).to_double();
    } catch (const std::exception& e) {
      rec.ok = false;
      rec.error = e.what();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

Aggregation aggregate(const std::vector<BenchmarkRecord>& records) {
  std::map<std::pair<int, int>, std::pair<double, int>> groups;  // (sum, count)
  for (const BenchmarkRecord& rec : records) {
    if (!rec.ok) continue;
    auto& [sum, count] = groups[{rec.qubits, rec.layers}];
    sum += rec.gained;
    count += 1;
  }
  Aggregation agg;
  std::map<int, std::pair<double, int>> per_qubit;  // (sum of group means/layers, groups)
  for (const auto& [key, val] : groups) {
    AggregateRow row;
    row.qubits = key.first;
    row.layers = key.second;
    row.count = val.second;
    row.mean_gained = val.first / val.second;
    agg.rows.push_back(row);
    if (row.layers > 0) {
      auto& [sum, count] = per_qubit[row.qubits];
      sum += row.mean_gained / row.layers;
      count += 1;
    }
  }
  for (const auto& [qubits, val] : per_qubit) {
    PerQubitRow row;
    row.qubits = qubits;
    row.groups = val.second;
    row.gained_per_layer = val.first / val.second;
    agg.per_qubit.push_back(row);
  }
  return agg;
}

LinearFit fit_line(const std::vector<std::pair<double, double>>& points) {
  LinearFit fit;
  const std::size_t n = points.size();
  if (n == 0) return fit;
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& [x, y] : points) {
    sx += x;
    sy += y;
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : points) {
    const double e = y - (fit.slope * x + fit.intercept);
    ss_res += e * e;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : (ss_res <= 1e-30 ? 1.0 : 0.0);
  return fit;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw Error("cannot open for writing: " + path);
  return out;
}

}  // namespace

void emit_csv(const std::vector<AggregateRow>& rows, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "qubits,layers,mean_gained,count\n";
  for (const AggregateRow& row : rows) {
    out << row.qubits << ',' << row.layers << ',' << format_double(row.mean_gained) << ','
        << row.count << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

void emit_csv(const std::vector<PerQubitRow>& rows, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "qubits,gained_per_layer\n";
  for (const PerQubitRow& row : rows) {
    out << row.qubits << ',' << format_double(row.gained_per_layer) << '\n';
  }
  if (!out) throw Error("write failed: " + path);
}

namespace {

const char* series_color(int index) {
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                   "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return kPalette[index % 10];
}

void write_scatter_svg(const Aggregation& agg, const std::string& path) {
  // Two panels: gained-per-layer vs qubits, and mean gained vs layers with
  // one series per qubit count.
  const double panel_w = 360.0;
  const double panel_h = 300.0;
  const double margin = 50.0;
  const double width = 2.0 * (panel_w + 2.0 * margin);
  const double height = panel_h + 2.0 * margin;

  double max_layers = 1.0;
  double max_gained = 1.0;
  double max_qubits = 2.0;
  double max_gpl = 1.0;
  for (const AggregateRow& row : agg.rows) {
    max_layers = std::max(max_layers, static_cast<double>(row.layers));
    max_gained = std::max(max_gained, row.mean_gained);
  }
  for (const PerQubitRow& row : agg.per_qubit) {
    max_qubits = std::max(max_qubits, static_cast<double>(row.qubits));
    max_gpl = std::max(max_gpl, row.gained_per_layer);
  }

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto axis = [&](double ox) {
    svg << "<g stroke=\"black\" stroke-width=\"1\">";
    svg << "<line x1=\"" << ox << "\" y1=\"" << margin + panel_h << "\" x2=\"" << ox + panel_w
        << "\" y2=\"" << margin + panel_h << "\"/>";
    svg << "<line x1=\"" << ox << "\" y1=\"" << margin << "\" x2=\"" << ox << "\" y2=\""
        << margin + panel_h << "\"/>";
    svg << "</g>\n";
  };

  // Panel 1: per-qubit gained per layer.
  const double ox1 = margin;
  axis(ox1);
  svg << "<text x=\"" << ox1 + panel_w / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-size=\"12\">qubits</text>\n";
  svg << "<g class=\"per-qubit\">";
  for (const PerQubitRow& row : agg.per_qubit) {
    const double x = ox1 + panel_w * row.qubits / (max_qubits + 1.0);
    const double y = margin + panel_h * (1.0 - row.gained_per_layer / (max_gpl * 1.1));
    svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\""
        << series_color(0) << "\"/>";
  }
  svg << "</g>\n";

  // Panel 2: mean gained vs layers, one series per qubit count.
  const double ox2 = 3.0 * margin + panel_w;
  axis(ox2);
  svg << "<text x=\"" << ox2 + panel_w / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-size=\"12\">layers</text>\n";
  std::map<int, std::vector<const AggregateRow*>> by_qubits;
  for (const AggregateRow& row : agg.rows) by_qubits[row.qubits].push_back(&row);
  int series_index = 0;
  for (const auto& [qubits, rows] : by_qubits) {
    svg << "<g class=\"series\" data-qubits=\"" << qubits << "\" fill=\""
        << series_color(series_index) << "\">";
    for (const AggregateRow* row : rows) {
      const double x = ox2 + panel_w * row->layers / (max_layers + 1.0);
      const double y = margin + panel_h * (1.0 - row->mean_gained / (max_gained * 1.1));
      svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\"/>";
    }
    svg << "</g>\n";
    svg << "<text x=\"" << ox2 + panel_w + 8 << "\" y=\"" << margin + 14 * series_index + 10
        << "\" font-size=\"11\" fill=\"" << series_color(series_index) << "\">" << qubits
        << "q</text>\n";
    ++series_index;
  }
  svg << "</svg>\n";

  std::ofstream out = open_out(path);
  out << svg.str();
  if (!out) throw Error("write failed: " + path);
}

}  // namespace

void emit_plot_data(const Aggregation& agg, const std::string& json_path,
                    const std::string& svg_path) {
  nlohmann::json doc;
  doc["series"] = nlohmann::json::array();
  std::map<int, nlohmann::json> by_qubits;
  for (const AggregateRow& row : agg.rows) {
    auto& series = by_qubits[row.qubits];
    if (series.is_null()) {
      series = nlohmann::json{{"qubits", row.qubits}, {"points", nlohmann::json::array()}};
    }
    series["points"].push_back({row.layers, row.mean_gained});
  }
  for (const auto& [qubits, series] : by_qubits) doc["series"].push_back(series);
  doc["per_qubit"] = nlohmann::json::array();
  for (const PerQubitRow& row : agg.per_qubit) {
    doc["per_qubit"].push_back({{"qubits", row.qubits},
                                {"gained_per_layer", row.gained_per_layer},
                                {"groups", row.groups}});
  }
  std::ofstream out = open_out(json_path);
  out << doc.dump(2) << '\n';
  if (!out) throw Error("write failed: " + json_path);
  if (!svg_path.empty()) write_scatter_svg(agg, svg_path);
}

BenchConfig bench_config_from_json(const nlohmann::json& j) {
  BenchConfig cfg;
  if (!j.is_object()) throw ParseError("bench config: expected a JSON object");
  cfg.qubit_counts = j.value("qubit_counts", std::vector<int>{});
  cfg.min_mcz_counts = j.value("min_mcz_counts", std::vector<int>{});
  cfg.circuits_per_point = j.value("circuits_per_point", 75);
  cfg.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("delta_pi") || j.contains("delta_t")) {
    cfg.timing.delta_pi = Ticks::parse(j.at("delta_pi").get<std::string>());
    cfg.timing.delta_t = Ticks::parse(j.at("delta_t").get<std::string>());
    check_timing(cfg.timing);
  }
  if (j.contains("lattice") && !j.at("lattice").is_string()) {
    cfg.lattice.rows = j.at("lattice").value("rows", 0);
    cfg.lattice.cols = j.at("lattice").value("cols", 0);
  }
  if (cfg.qubit_counts.empty()) throw ParseError("bench config: qubit_counts is required");
  if (cfg.min_mcz_counts.empty()) throw ParseError("bench config: min_mcz_counts is required");
  if (cfg.circuits_per_point < 1) throw ParseError("bench config: circuits_per_point must be >= 1");
  return cfg;
}

BenchConfig load_bench_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open bench config: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bench config: ") + e.what());
  }
  return bench_config_from_json(j);
}

std::vector<GenConfig> expand_configs(const BenchConfig& cfg) {
  std::vector<GenConfig> configs;
  for (int qubits : cfg.qubit_counts) {
    for (int min_mcz : cfg.min_mcz_counts) {
      for (int rep = 0; rep < cfg.circuits_per_point; ++rep) {
        GenConfig gc;
        gc.n_qubits = qubits;
        gc.min_mcz = min_mcz;
        gc.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(qubits),
                              static_cast<std::uint64_t>(min_mcz),
                              static_cast<std::uint64_t>(rep));
        configs.push_back(gc);
      }
    }
  }
  return configs;
}

}  // namespace atomsched
