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

#include "atomsched/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "atomsched/errors.hpp"

namespace atomsched {

QubitIndex Instruction::target() const {
  if (const auto* rt = std::get_if<Retarget>(&kind)) return rt->to;
  return std::get<Pulse>(kind).target;
}

Ticks Instruction::dur() const {
  if (const auto* rt = std::get_if<Retarget>(&kind)) return rt->duration;
  return std::get<Pulse>(kind).duration;
}

namespace {

bool role_equal(const PulseRole& a, const PulseRole& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ra = std::get_if<RamanRole>(&a)) {
    const auto& rb = std::get<RamanRole>(b);
    return ra->theta == rb.theta && ra->phi == rb.phi;
  }
  return true;
}

}  // namespace

bool operator==(const Instruction& a, const Instruction& b) {
  if (a.channel != b.channel || a.t_start != b.t_start || a.block_id != b.block_id) return false;
  if (a.kind.index() != b.kind.index()) return false;
  if (const auto* ra = std::get_if<Retarget>(&a.kind)) {
    const auto& rb = std::get<Retarget>(b.kind);
    return ra->to == rb.to && ra->duration == rb.duration;
  }
  const auto& pa = std::get<Pulse>(a.kind);
  const auto& pb = std::get<Pulse>(b.kind);
  return pa.target == pb.target && pa.duration == pb.duration && role_equal(pa.role, pb.role);
}

bool operator==(const PulseSequence& a, const PulseSequence& b) {
  return a.n_qubits == b.n_qubits && a.timing.delta_pi == b.timing.delta_pi &&
         a.timing.delta_t == b.timing.delta_t && a.rydberg == b.rydberg && a.raman == b.raman;
}

std::vector<std::pair<QubitIndex, PulseRole>> mcz_pulse_train(
    const std::vector<QubitIndex>& qubits, QubitIndex border, QubitIndex two_pi_recipient) {
  if (qubits.size() < 2) throw Error("mcz_pulse_train: at least 2 qubits required");
  if (border == two_pi_recipient) {
    throw Error("mcz_pulse_train: border and 2pi recipient must differ");
  }
  const auto member = [&](QubitIndex q) {
    return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
  };
  if (!member(border) || !member(two_pi_recipient)) {
    throw Error("mcz_pulse_train: border and 2pi recipient must be members");
  }

  std::vector<QubitIndex> ladder{border};
  for (QubitIndex q : qubits) {
    if (q != border && q != two_pi_recipient) ladder.push_back(q);
  }
  std::vector<std::pair<QubitIndex, PulseRole>> train;
  train.reserve(2 * qubits.size() - 1);
  for (QubitIndex q : ladder) train.emplace_back(q, PiRole{});
  train.emplace_back(two_pi_recipient, TwoPiRole{});
  for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) train.emplace_back(*it, PiRole{});
  return train;
}

Ticks duration(const PulseSequence& seq) {
  Ticks latest{0};
  for (const auto* channel : {&seq.rydberg, &seq.raman}) {
    for (const Instruction& ins : *channel) latest = std::max(latest, ins.t_end());
  }
  return latest;
}

Ticks mcz_block_duration(int n, const TimingParams& timing) {
  if (n < 2) throw Error("mcz_block_duration: n must be >= 2");
  return Ticks(2 * n) * timing.delta_pi + Ticks(2 * n - 2) * timing.delta_t;
}

namespace {

struct Extraction {
  std::vector<BlockInfo> blocks;
  std::vector<WellformedIssue> issues;
};

Extraction extract_blocks_lenient(const PulseSequence& seq) {
  Extraction out;
  const auto issue = [&](std::string msg) {
    out.issues.push_back({'c', std::move(msg)});
  };

  std::vector<const Instruction*> pulses;
  for (const Instruction& ins : seq.rydberg) {
    if (ins.is_pulse()) pulses.push_back(&ins);
  }
  std::map<int, std::vector<std::size_t>> positions;  // block id -> projection slots
  for (std::size_t p = 0; p < pulses.size(); ++p) {
    if (!pulses[p]->block_id) {
      issue("rydberg pulse at projection slot " + std::to_string(p) + " carries no block tag");
      continue;
    }
    positions[*pulses[p]->block_id].push_back(p);
  }

  for (const auto& [id, slots] : positions) {
    if (slots.back() - slots.front() + 1 != slots.size()) {
      issue("block " + std::to_string(id) + " is interrupted by other rydberg pulses");
      continue;
    }
    const std::size_t m = slots.size();
    if (m < 3 || m % 2 == 0) {
      issue("block " + std::to_string(id) + " has " + std::to_string(m) +
            " pulses; a train needs an odd count >= 3");
      continue;
    }
    BlockInfo block;
    block.id = id;
    for (std::size_t s : slots) {
      block.targets.push_back(pulses[s]->pulse().target);
      block.intervals.emplace_back(pulses[s]->t_start, pulses[s]->t_end());
    }
    bool shape_ok = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (block.targets[i] != block.targets[m - 1 - i]) {
        issue("block " + std::to_string(id) + " targets are not palindromic");
        shape_ok = false;
        break;
      }
      const bool is_mid = (i == m / 2);
      const auto& role = pulses[slots[i]]->pulse().role;
      if (is_mid != std::holds_alternative<TwoPiRole>(role)) {
        issue("block " + std::to_string(id) + " must carry exactly one 2pi pulse, centered");
        shape_ok = false;
        break;
      }
    }
    if (!shape_ok) continue;
    block.members.insert(block.targets.begin(), block.targets.end());
    const std::size_t n = block.members.size();
    if (m != 2 * n - 1) {
      issue("block " + std::to_string(id) + " repeats a member inside one train half");
      continue;
    }
    block.border = block.targets.front();
    block.two_pi = block.targets[m / 2];
    block.first_start = block.intervals.front().first;
    block.last_end = block.intervals.back().second;
    out.blocks.push_back(std::move(block));
  }

  std::sort(out.blocks.begin(), out.blocks.end(),
            [](const BlockInfo& a, const BlockInfo& b) { return a.first_start < b.first_start; });
  return out;
}

std::vector<InvolvementWindow> windows_of(const std::vector<BlockInfo>& blocks) {
  std::vector<InvolvementWindow> out;
  for (const BlockInfo& block : blocks) {
    for (QubitIndex q : block.members) {
      Ticks start{0};
      Ticks end{0};
      bool found = false;
      // The 2pi recipient appears exactly once, so first own pulse ==
      // last own pulse == the 2pi pulse; the generic scan covers it.
      for (std::size_t i = 0; i < block.targets.size(); ++i) {
        if (block.targets[i] != q) continue;
        if (!found) {
          start = block.intervals[i].first;
          found = true;
        }
        end = block.intervals[i].second;
      }
      out.push_back({block.id, q, start, end});
    }
  }
  return out;
}

bool open_overlap(const Ticks& s1, const Ticks& e1, const Ticks& s2, const Ticks& e2) {
  return s1 < e2 && s2 < e1;
}

}  // namespace

std::vector<BlockInfo> extract_blocks(const PulseSequence& seq) {
  Extraction ext = extract_blocks_lenient(seq);
  if (!ext.issues.empty()) throw Error("extract_blocks: " + ext.issues.front().message);
  return std::move(ext.blocks);
}

std::vector<InvolvementWindow> involvement_windows(const PulseSequence& seq) {
  return windows_of(extract_blocks(seq));
}

bool WellformedReport::has_clause(char clause) const {
  return std::any_of(issues.begin(), issues.end(),
                     [&](const WellformedIssue& i) { return i.clause == clause; });
}

std::string WellformedReport::str() const {
  std::ostringstream os;
  for (const auto& i : issues) os << "(" << i.clause << ") " << i.message << "\n";
  return os.str();
}

WellformedReport check_wellformed(const PulseSequence& seq, const Circuit& circuit) {
  WellformedReport report;
  const auto issue = [&](char clause, std::string msg) {
    report.issues.push_back({clause, std::move(msg)});
  };

  // (a) per-channel ordering and non-overlap.
  const auto check_order = [&](const std::vector<Instruction>& channel, const char* name) {
    for (std::size_t i = 1; i < channel.size(); ++i) {
      if (channel[i].t_start < channel[i - 1].t_start) {
        issue('a', std::string(name) + " instructions out of order at index " + std::to_string(i));
      } else if (channel[i - 1].t_end() > channel[i].t_start) {
        issue('a', std::string(name) + " instructions " + std::to_string(i - 1) + " and " +
                       std::to_string(i) + " overlap");
      }
    }
  };
  check_order(seq.rydberg, "rydberg");
  check_order(seq.raman, "raman");

  // (b) retargeting discipline and structural role/duration rules.
  const auto check_channel = [&](const std::vector<Instruction>& channel, Channel which,
                                 const char* name) {
    std::optional<QubitIndex> addressed;
    for (std::size_t i = 0; i < channel.size(); ++i) {
      const Instruction& ins = channel[i];
      const std::string where = std::string(name) + "[" + std::to_string(i) + "]";
      if (ins.channel != which) issue('b', where + " carries the wrong channel tag");
      if (ins.target() < 0 || ins.target() >= seq.n_qubits) {
        issue('b', where + " targets a qubit out of range");
        continue;
      }
      if (!ins.is_pulse()) {
        if (ins.dur() != seq.timing.delta_t) issue('b', where + " retarget duration != delta_t");
        addressed = ins.target();
        continue;
      }
      const Pulse& pulse = ins.pulse();
      if (which == Channel::Rydberg) {
        if (std::holds_alternative<RamanRole>(pulse.role)) {
          issue('b', where + " raman role on the rydberg channel");
        } else if (std::holds_alternative<TwoPiRole>(pulse.role)) {
          if (pulse.duration != Ticks(2) * seq.timing.delta_pi) {
            issue('b', where + " 2pi pulse duration != 2*delta_pi");
          }
        } else if (pulse.duration > seq.timing.delta_pi || pulse.duration <= Ticks(0)) {
          issue('b', where + " pi pulse duration outside (0, delta_pi]");
        }
      } else {
        if (!std::holds_alternative<RamanRole>(pulse.role)) {
          issue('b', where + " non-raman role on the raman channel");
        } else if (pulse.duration > seq.timing.delta_pi || pulse.duration <= Ticks(0)) {
          issue('b', where + " raman pulse duration outside (0, delta_pi]");
        }
      }
      if (!addressed || *addressed != pulse.target) {
        issue('b', where + " fires without a retarget to its target");
      }
    }
  };
  check_channel(seq.rydberg, Channel::Rydberg, "rydberg");
  check_channel(seq.raman, Channel::Raman, "raman");

  // (c) block train structure.
  Extraction ext = extract_blocks_lenient(seq);
  for (auto& i : ext.issues) report.issues.push_back(std::move(i));
  const std::vector<InvolvementWindow> windows = windows_of(ext.blocks);

  // (d) Raman pulses stay clear of their qubit's involvement windows.
  for (std::size_t i = 0; i < seq.raman.size(); ++i) {
    const Instruction& ins = seq.raman[i];
    if (!ins.is_pulse()) continue;
    for (const InvolvementWindow& w : windows) {
      if (w.qubit != ins.pulse().target) continue;
      if (open_overlap(ins.t_start, ins.t_end(), w.start, w.end)) {
        issue('d', "raman[" + std::to_string(i) + "] overlaps qubit " + std::to_string(w.qubit) +
                       "'s involvement in block " + std::to_string(w.block_id));
      }
    }
  }

  // (e)+(f) per-qubit realization against the circuit.
  struct Realized {
    bool is_block = false;
    Ticks start{0};
    Ticks end{0};
    double theta = 0.0;
    double phi = 0.0;
    int block_id = -1;
  };
  if (seq.n_qubits != circuit.n_qubits) {
    issue('f', "sequence and circuit disagree on qubit count");
    return report;
  }
  // Out-of-range targets were already reported under (b); skip them here.
  const auto in_range = [&](QubitIndex q) { return q >= 0 && q < seq.n_qubits; };
  std::vector<std::vector<Realized>> realized(static_cast<std::size_t>(seq.n_qubits));
  for (const Instruction& ins : seq.raman) {
    if (!ins.is_pulse() || !in_range(ins.pulse().target)) continue;
    const auto* role = std::get_if<RamanRole>(&ins.pulse().role);
    if (!role) continue;  // already reported under (b)
    realized[static_cast<std::size_t>(ins.pulse().target)].push_back(
        {false, ins.t_start, ins.t_end(), role->theta, role->phi, -1});
  }
  for (const InvolvementWindow& w : windows) {
    if (!in_range(w.qubit)) continue;
    realized[static_cast<std::size_t>(w.qubit)].push_back(
        {true, w.start, w.end, 0.0, 0.0, w.block_id});
  }
  for (auto& ops : realized) {
    std::sort(ops.begin(), ops.end(), [](const Realized& x, const Realized& y) {
      return std::tie(x.start, x.end) < std::tie(y.start, y.end);
    });
  }

  struct Expected {
    bool is_mcz = false;
    double theta = 0.0;
    double phi = 0.0;
    std::size_t gate_index = 0;
  };
  std::vector<std::vector<Expected>> expected(static_cast<std::size_t>(circuit.n_qubits));
  std::size_t circuit_mcz_count = 0;
  for (std::size_t gi = 0; gi < circuit.gates.size(); ++gi) {
    const Gate& gate = circuit.gates[gi];
    if (const auto* r = std::get_if<RGate>(&gate)) {
      expected[static_cast<std::size_t>(r->qubit)].push_back({false, r->theta, r->phi, gi});
    } else if (const auto* mcz = std::get_if<MczGate>(&gate)) {
      ++circuit_mcz_count;
      for (QubitIndex q : mcz->qubits) {
        expected[static_cast<std::size_t>(q)].push_back({true, 0.0, 0.0, gi});
      }
    } else {
      issue('f', "circuit gate " + std::to_string(gi) + " is not realizable as pulses");
    }
  }

  std::map<int, std::size_t> block_to_gate;
  std::map<std::size_t, int> gate_to_block;
  for (int q = 0; q < seq.n_qubits; ++q) {
    const auto& exp = expected[static_cast<std::size_t>(q)];
    const auto& real = realized[static_cast<std::size_t>(q)];
    for (std::size_t k = 1; k < real.size(); ++k) {
      if (real[k - 1].end > real[k].start) {
        issue('e', "operations on qubit " + std::to_string(q) + " overlap in time");
      }
    }
    if (exp.size() != real.size()) {
      issue('f', "qubit " + std::to_string(q) + " realizes " + std::to_string(real.size()) +
                     " operations, circuit has " + std::to_string(exp.size()));
      continue;
    }
    for (std::size_t k = 0; k < exp.size(); ++k) {
      if (exp[k].is_mcz != real[k].is_block) {
        issue('e', "qubit " + std::to_string(q) + " operation " + std::to_string(k) +
                       " violates the circuit's per-qubit order");
        continue;
      }
      if (!exp[k].is_mcz) {
        if (std::abs(exp[k].theta - real[k].theta) > 1e-12 ||
            std::abs(exp[k].phi - real[k].phi) > 1e-12) {
          issue('f', "qubit " + std::to_string(q) + " pulse " + std::to_string(k) +
                         " carries wrong rotation angles");
        }
        continue;
      }
      const auto [it, inserted] = block_to_gate.emplace(real[k].block_id, exp[k].gate_index);
      if (!inserted && it->second != exp[k].gate_index) {
        issue('f', "block " + std::to_string(real[k].block_id) + " realizes two circuit gates");
        continue;
      }
      const auto [jt, fresh] = gate_to_block.emplace(exp[k].gate_index, real[k].block_id);
      if (!fresh && jt->second != real[k].block_id) {
        issue('f', "circuit gate " + std::to_string(exp[k].gate_index) +
                       " is realized by two blocks");
      }
    }
  }
  if (block_to_gate.size() != ext.blocks.size() || gate_to_block.size() != circuit_mcz_count) {
    issue('f', "blocks and circuit MCZ gates do not correspond one-to-one");
  }
  for (const auto& [bid, gi] : block_to_gate) {
    const auto* mcz = std::get_if<MczGate>(&circuit.gates[gi]);
    const auto bit = std::find_if(ext.blocks.begin(), ext.blocks.end(),
                                  [&](const BlockInfo& b) { return b.id == bid; });
    if (!mcz || bit == ext.blocks.end()) continue;
    if (std::set<QubitIndex>(mcz->qubits.begin(), mcz->qubits.end()) != bit->members) {
      issue('f', "block " + std::to_string(bid) + " acts on the wrong qubit set");
    }
  }
  return report;
}

WellformedReport check_gate_level_busy(const PulseSequence& seq) {
  WellformedReport report;
  Extraction ext = extract_blocks_lenient(seq);
  for (auto& i : ext.issues) report.issues.push_back(std::move(i));
  for (const BlockInfo& block : ext.blocks) {
    for (std::size_t i = 0; i < seq.raman.size(); ++i) {
      const Instruction& ins = seq.raman[i];
      if (!ins.is_pulse()) continue;
      if (!block.members.count(ins.pulse().target)) continue;
      if (open_overlap(ins.t_start, ins.t_end(), block.first_start, block.last_end)) {
        report.issues.push_back(
            {'g', "raman[" + std::to_string(i) + "] falls inside block " +
                      std::to_string(block.id) + "'s span on a member qubit"});
      }
    }
  }
  return report;
}

namespace {

nlohmann::json instruction_to_json(const Instruction& ins) {
  nlohmann::json j;
  j["t_start"] = ins.t_start.str();
  j["target"] = ins.target();
  j["duration"] = ins.dur().str();
  if (ins.is_pulse()) {
    j["kind"] = "pulse";
    const auto& role = ins.pulse().role;
    if (std::holds_alternative<PiRole>(role)) {
      j["role"] = "pi";
    } else if (std::holds_alternative<TwoPiRole>(role)) {
      j["role"] = "two_pi";
    } else {
      const auto& r = std::get<RamanRole>(role);
      j["role"] = {{"raman", {{"theta", r.theta}, {"phi", r.phi}}}};
    }
  } else {
    j["kind"] = "retarget";
  }
  j["block"] = ins.block_id ? nlohmann::json(*ins.block_id) : nlohmann::json(nullptr);
  return j;
}

Instruction instruction_from_json(const nlohmann::json& j, Channel channel) {
  Instruction ins;
  ins.channel = channel;
  ins.t_start = Ticks::parse(j.at("t_start").get<std::string>());
  const Ticks dur = Ticks::parse(j.at("duration").get<std::string>());
  const QubitIndex target = j.at("target").get<QubitIndex>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "retarget") {
    ins.kind = Retarget{target, dur};
  } else if (kind == "pulse") {
    PulseRole role;
    const auto& rj = j.at("role");
    if (rj.is_string() && rj.get<std::string>() == "pi") {
      role = PiRole{};
    } else if (rj.is_string() && rj.get<std::string>() == "two_pi") {
      role = TwoPiRole{};
    } else if (rj.is_object() && rj.contains("raman")) {
      role = RamanRole{rj.at("raman").at("theta").get<double>(),
                       rj.at("raman").at("phi").get<double>()};
    } else {
      throw ParseError("unknown pulse role: " + rj.dump());
    }
    ins.kind = Pulse{target, dur, role};
  } else {
    throw ParseError("unknown instruction kind: " + kind);
  }
  if (j.contains("block") && !j.at("block").is_null()) {
    ins.block_id = j.at("block").get<int>();
  }
  return ins;
}

}  // namespace

nlohmann::json sequence_to_json(const PulseSequence& seq) {
  nlohmann::json rydberg = nlohmann::json::array();
  for (const Instruction& ins : seq.rydberg) rydberg.push_back(instruction_to_json(ins));
  nlohmann::json raman = nlohmann::json::array();
  for (const Instruction& ins : seq.raman) raman.push_back(instruction_to_json(ins));
  return {{"n_qubits", seq.n_qubits},
          {"timing", timing_to_json(seq.timing)},
          {"channels", {{"rydberg", std::move(rydberg)}, {"raman", std::move(raman)}}}};
}

PulseSequence sequence_from_json(const nlohmann::json& doc) {
  try {
    PulseSequence seq;
    seq.timing = timing_from_json(doc.at("timing"));
    for (const auto& j : doc.at("channels").at("rydberg")) {
      seq.rydberg.push_back(instruction_from_json(j, Channel::Rydberg));
    }
    for (const auto& j : doc.at("channels").at("raman")) {
      seq.raman.push_back(instruction_from_json(j, Channel::Raman));
    }
    if (doc.contains("n_qubits")) {
      seq.n_qubits = doc.at("n_qubits").get<int>();
    } else {
      for (const auto* channel : {&seq.rydberg, &seq.raman}) {
        for (const Instruction& ins : *channel) {
          seq.n_qubits = std::max(seq.n_qubits, ins.target() + 1);
        }
      }
    }
    return seq;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("sequence document: ") + e.what());
  }
}

PulseSequence load_sequence(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read sequence file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  try {
    return sequence_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad sequence document " + path + ": " + e.what());
  }
}

void save_sequence(const PulseSequence& seq, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write sequence file: " + path);
  out << sequence_to_json(seq).dump(2) << "\n";
}

}  // namespace atomsched
