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

#include "atomsched/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "atomsched/bench.hpp"
#include "atomsched/circuit.hpp"
#include "atomsched/device.hpp"
#include "atomsched/errors.hpp"
#include "atomsched/gate_scheduler.hpp"
#include "atomsched/pulse_scheduler.hpp"
#include "atomsched/render.hpp"
#include "atomsched/sequence.hpp"
#include "atomsched/transpiler.hpp"
#include "atomsched/verifier.hpp"

namespace atomsched {

namespace {

TimingParams parse_timing(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw ParseError("--timing expects \"delta_pi,delta_t\", got: " + text);
  }
  TimingParams t;
  t.delta_pi = Ticks::parse(text.substr(0, comma));
  t.delta_t = Ticks::parse(text.substr(comma + 1));
  check_timing(t);
  return t;
}

LatticeSpec parse_lattice(const std::string& text) {
  if (text == "auto") return LatticeSpec{};
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw ParseError("--lattice expects \"rows,cols\" or \"auto\", got: " + text);
  }
  LatticeSpec spec;
  spec.rows = std::stoi(text.substr(0, comma));
  spec.cols = std::stoi(text.substr(comma + 1));
  if (spec.rows < 1 || spec.cols < 1) {
    throw ParseError("--lattice dimensions must be positive: " + text);
  }
  return spec;
}

std::string format_gained(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

struct Options {
  std::string input;
  std::string output;
  std::string output_gate;
  std::string circuit_path;
  std::string sequence_path;
  std::string config_path;
  std::string output_dir = ".";
  std::string stats_path;
  std::string timing = "1,1";
  std::string lattice = "auto";
  std::string strategy = "pulse";
  std::uint64_t seed = 0;
  bool seed_given = false;
};

int cmd_validate(const Options& opt) {
  const Circuit circuit = load_circuit(opt.input);
  std::optional<ConnectivityGraph> graph;
  const LatticeSpec spec = parse_lattice(opt.lattice);
  if (!spec.auto_size()) graph = lattice_for(spec, circuit.n_qubits);
  const ValidationReport report =
      validate_practical_form(circuit, graph ? &*graph : nullptr);
  std::cout << report.str();
  return report.ok() ? 0 : 1;
}

int cmd_transpile(const Options& opt) {
  const Circuit circuit = load_circuit(opt.input);
  const ConnectivityGraph graph = lattice_for(parse_lattice(opt.lattice), circuit.n_qubits);
  const auto [transpiled, stats] = transpile(circuit, graph);
  nlohmann::json stats_json{
      {"swaps_added", stats.swaps_added}, {"layers", stats.layers}, {"qubits", stats.qubits}};
  if (!opt.output.empty()) {
    save_circuit(transpiled, opt.output);
    if (!opt.stats_path.empty()) {
      write_or_print(stats_json.dump(2) + "\n", opt.stats_path);
    } else {
      std::cout << stats_json.dump(2) << '\n';
    }
  } else {
    write_or_print(circuit_to_json(transpiled).dump(2) + "\n", "");
    if (!opt.stats_path.empty()) write_or_print(stats_json.dump(2) + "\n", opt.stats_path);
  }
  return 0;
}

int cmd_schedule(const Options& opt) {
  const Circuit circuit = load_circuit(opt.input);
  const TimingParams timing = parse_timing(opt.timing);
  if (opt.strategy == "pulse" || opt.strategy == "gate") {
    const PulseSequence seq = opt.strategy == "pulse" ? schedule_pulse_level(circuit, timing)
                                                      : schedule_gate_level(circuit, timing);
    if (opt.output.empty()) {
      write_or_print(sequence_to_json(seq).dump(2) + "\n", "");
    } else {
      save_sequence(seq, opt.output);
    }
    return 0;
  }
  const PulseSequence pulse = schedule_pulse_level(circuit, timing);
  const PulseSequence gate = schedule_gate_level(circuit, timing);
  if (!opt.output.empty()) save_sequence(pulse, opt.output);
  if (!opt.output_gate.empty()) save_sequence(gate, opt.output_gate);
  const Ticks dp = duration(pulse);
  const Ticks dg = duration(gate);
  const double gained = ((dg - dp) / timing.delta_pi).to_double();
  std::cout << "pulse_duration=" << dp.str() << " gate_duration=" << dg.str()
            << " gained=" << format_gained(gained) << " (delta_pi units)\n";
  return 0;
}

int cmd_verify(const Options& opt) {
  const Circuit circuit = load_circuit(opt.circuit_path);
  const PulseSequence seq = load_sequence(opt.sequence_path);
  const EquivalenceResult result = check_equivalence(circuit, seq);
  nlohmann::json out{{"equivalent", result.equivalent},
                     {"leakage", result.leakage},
                     {"phase", {result.phase.real(), result.phase.imag()}}};
  std::cout << out.dump(2) << '\n';
  return result.equivalent ? 0 : 1;
}

int cmd_bench(const Options& opt) {
  BenchConfig cfg = load_bench_config(opt.config_path);
  if (opt.seed_given) cfg.seed = opt.seed;
  if (const char* env = std::getenv("ATOMSCHED_SEED")) {
    cfg.seed = std::stoull(env);
  }
  const std::vector<GenConfig> configs = expand_configs(cfg);
  const std::vector<BenchmarkRecord> records = run_benchmark(configs, cfg.lattice, cfg.timing);
  const Aggregation agg = aggregate(records);

  const std::string dir = opt.output_dir;
  std::ofstream rec_out(dir + "/records.csv", std::ios::binary);
  if (!rec_out) throw Error("cannot open for writing: " + dir + "/records.csv");
  rec_out << "qubits,layers,dur_gate,dur_pulse,gained,seed,ok\n";
  int failed = 0;
  for (const BenchmarkRecord& rec : records) {
    if (!rec.ok) ++failed;
    rec_out << rec.qubits << ',' << rec.layers << ',' << rec.dur_gate.str() << ','
            << rec.dur_pulse.str() << ',' << format_gained(rec.gained) << ',' << rec.seed
            << ',' << (rec.ok ? 1 : 0) << '\n';
  }
  if (!rec_out) throw Error("write failed: " + dir + "/records.csv");
  emit_csv(agg.rows, dir + "/aggregate.csv");
  emit_csv(agg.per_qubit, dir + "/per_qubit.csv");
  emit_plot_data(agg, dir + "/plot.json", dir + "/plot.svg");
  std::cerr << "bench: " << records.size() << " circuits, " << failed << " failed, outputs in "
            << dir << '\n';
  return failed == 0 ? 0 : 1;
}

int cmd_render(const Options& opt) {
  const PulseSequence seq = load_sequence(opt.input);
  write_or_print(render_svg(seq), opt.output);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Pulse-level scheduling toolkit for neutral-atom devices"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* validate = app.add_subcommand("validate", "Check a circuit against practical form");
  validate->add_option("--input", opt.input, "Circuit JSON")->required();
  validate->add_option("--lattice", opt.lattice, "rows,cols or auto");

  CLI::App* transpile_cmd =
      app.add_subcommand("transpile", "Place, route, and lower a circuit to native form");
  transpile_cmd->add_option("--input", opt.input, "Circuit JSON")->required();
  transpile_cmd->add_option("--output", opt.output, "Transpiled circuit JSON path");
  transpile_cmd->add_option("--lattice", opt.lattice, "rows,cols or auto");
  transpile_cmd->add_option("--stats", opt.stats_path, "Write transpile stats JSON here");

  CLI::App* schedule =
      app.add_subcommand("schedule", "Compile a practical-form circuit to a pulse sequence");
  schedule->add_option("--input", opt.input, "Circuit JSON")->required();
  schedule->add_option("--strategy", opt.strategy, "pulse, gate, or both")
      ->check(CLI::IsMember({"pulse", "gate", "both"}));
  schedule->add_option("--timing", opt.timing, "delta_pi,delta_t (tick fractions)");
  schedule->add_option("--output", opt.output, "Sequence JSON path (pulse strategy)");
  schedule->add_option("--output-gate", opt.output_gate, "Gate-level sequence path (both)");

  CLI::App* verify = app.add_subcommand("verify", "Check a sequence implements a circuit");
  verify->add_option("--circuit", opt.circuit_path, "Circuit JSON")->required();
  verify->add_option("--sequence", opt.sequence_path, "Sequence JSON")->required();

  CLI::App* bench = app.add_subcommand("bench", "Run the scheduler comparison benchmark");
  bench->add_option("--config", opt.config_path, "Benchmark config JSON")->required();
  bench->add_option("--output-dir", opt.output_dir, "Directory for CSV/plot outputs");
  bench->add_option("--seed", opt.seed, "Master seed override")
      ->each([&](const std::string&) { opt.seed_given = true; });

  CLI::App* render = app.add_subcommand("render", "Render a sequence timeline as SVG");
  render->add_option("--input", opt.input, "Sequence JSON")->required();
  render->add_option("--output", opt.output, "SVG path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(opt);
    if (app.got_subcommand(transpile_cmd)) return cmd_transpile(opt);
    if (app.got_subcommand(schedule)) return cmd_schedule(opt);
    if (app.got_subcommand(verify)) return cmd_verify(opt);
    if (app.got_subcommand(bench)) return cmd_bench(opt);
    if (app.got_subcommand(render)) return cmd_render(opt);
  } catch (const ParseError& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "error: circuit rejected: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;  // unreachable: require_subcommand(1)
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("atomsched");
  for (const std::string& a : args) storage.push_back(a);
  std::vector<const char*> argv;
  argv.reserve(storage.size());
  for (const std::string& s : storage) argv.push_back(s.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace atomsched
