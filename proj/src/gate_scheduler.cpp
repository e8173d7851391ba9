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

#include "atomsched/gate_scheduler.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

#include "atomsched/errors.hpp"

namespace atomsched {

namespace {

using GateKey = std::pair<int, QubitIndex>;  // (single layer, qubit)

struct GateEmitter {
  TimingParams t;
  PulseSequence seq;
  Ticks ryd_free{0};
  Ticks ram_free{0};
  std::optional<QubitIndex> ryd_target;
  std::optional<QubitIndex> ram_target;
  std::vector<Ticks> busy;

  // Atomic unit: the retarget (when needed) and pulse run back to back in a
  // slot where both the channel and the qubit are free.
  void unit(const RGate& g) {
    const QubitIndex q = g.qubit;
    const bool rt = !(ram_target && *ram_target == q);
    Ticks start = ram_free;
    if (busy[static_cast<std::size_t>(q)] > start) start = busy[static_cast<std::size_t>(q)];
    if (rt) {
      Instruction ins;
      ins.channel = Channel::Raman;
      ins.kind = Retarget{q, t.delta_t};
      ins.t_start = start;
      seq.raman.push_back(ins);
      start = start + t.delta_t;
    }
    Instruction pulse;
    pulse.channel = Channel::Raman;
    pulse.kind = Pulse{q, t.delta_pi, RamanRole{g.theta, g.phi}};
    pulse.t_start = start;
    seq.raman.push_back(pulse);
    ram_free = start + t.delta_pi;
    ram_target = q;
    busy[static_cast<std::size_t>(q)] = ram_free;
  }

  void block(const MczGate& mcz, int id) {
    const QubitIndex border = mcz.qubits[0];
    const QubitIndex two_pi = mcz.qubits[1];
    const auto train = mcz_pulse_train(mcz.qubits, border, two_pi);
    const bool rt = !(ryd_target && *ryd_target == border);
    Ticks t0 = rt ? ryd_free + t.delta_t : ryd_free;
    for (QubitIndex q : mcz.qubits) {
      if (busy[static_cast<std::size_t>(q)] > t0) t0 = busy[static_cast<std::size_t>(q)];
    }
    if (rt) {
      Instruction ins;
      ins.channel = Channel::Rydberg;
      ins.kind = Retarget{border, t.delta_t};
      ins.t_start = t0 - t.delta_t;
      ins.block_id = id;
      seq.rydberg.push_back(ins);
    }
    Ticks off{0};
    for (std::size_t p = 0; p < train.size(); ++p) {
      const QubitIndex q = train[p].first;
      const PulseRole& role = train[p].second;
      const Ticks dur =
          std::holds_alternative<TwoPiRole>(role) ? Ticks(2) * t.delta_pi : t.delta_pi;
      if (p > 0) {
        Instruction ins;
        ins.channel = Channel::Rydberg;
        ins.kind = Retarget{q, t.delta_t};
        ins.t_start = t0 + off;
        ins.block_id = id;
        seq.rydberg.push_back(ins);
        off = off + t.delta_t;
      }
      Instruction pulse;
      pulse.channel = Channel::Rydberg;
      pulse.kind = Pulse{q, dur, role};
      pulse.t_start = t0 + off;
      pulse.block_id = id;
      seq.rydberg.push_back(pulse);
      off = off + dur;
    }
    ryd_free = t0 + off;
    ryd_target = border;
    for (QubitIndex q : mcz.qubits) busy[static_cast<std::size_t>(q)] = ryd_free;
  }
};

}  // namespace

PulseSequence schedule_gate_level(const LayeredCircuit& layered, const TimingParams& timing) {
  check_timing(timing);
  GateEmitter em;
  em.t = timing;
  em.seq.n_qubits = layered.n_qubits;
  em.seq.timing = timing;
  em.busy.assign(static_cast<std::size_t>(layered.n_qubits), Ticks(0));

  std::set<GateKey> done;
  // Every still-pending single-qubit gate on a member at or before layer k.
  auto pending_before = [&](const MczGate& mcz, int k) {
    std::vector<GateKey> keys;
    for (int j = 0; j <= k; ++j) {
      for (QubitIndex q : mcz.qubits) {
        if (layered.singles[j].gates.count(q) != 0 && done.count({j, q}) == 0) {
          keys.push_back({j, q});
        }
      }
    }
    std::sort(keys.begin(), keys.end());
    return keys;
  };

  int next_id = 0;
  for (int k = 0; k < static_cast<int>(layered.multis.size()); ++k) {
    const std::vector<Ticks> snapshot = em.busy;
    struct Entry {
      Ticks involved{0};
      int pending = 0;
      QubitIndex lowest = 0;
      const MczGate* mcz = nullptr;
    };
    std::vector<Entry> entries;
    for (const MczGate& m : layered.multis[k].gates) {
      Entry e;
      e.mcz = &m;
      e.lowest = m.qubits[0];
      for (QubitIndex q : m.qubits) {
        if (snapshot[static_cast<std::size_t>(q)] > e.involved) {
          e.involved = snapshot[static_cast<std::size_t>(q)];
        }
      }
      e.pending = static_cast<int>(pending_before(m, k).size());
      entries.push_back(e);
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.involved, a.pending, a.lowest) <
             std::tie(b.involved, b.pending, b.lowest);
    });
    for (const Entry& e : entries) {
      for (const auto& [j, q] : pending_before(*e.mcz, k)) {
        em.unit(layered.singles[j].gates.at(q));
        done.insert({j, q});
      }
      em.block(*e.mcz, next_id++);
    }
  }

  // Final single-qubit gates, earliest feasible slot first.
  std::vector<GateKey> finals;
  for (int j = 0; j < static_cast<int>(layered.singles.size()); ++j) {
    for (const auto& [q, g] : layered.singles[j].gates) {
      if (done.count({j, q}) == 0) finals.push_back({j, q});
    }
  }
  while (!finals.empty()) {
    std::size_t best = 0;
    auto feasible = [&](const GateKey& key) {
      Ticks est = em.ram_free;
      if (em.busy[static_cast<std::size_t>(key.second)] > est) {
        est = em.busy[static_cast<std::size_t>(key.second)];
      }
      return est;
    };
    for (std::size_t i = 1; i < finals.size(); ++i) {
      if (std::make_pair(feasible(finals[i]), finals[i]) <
          std::make_pair(feasible(finals[best]), finals[best])) {
        best = i;
      }
    }
    em.unit(layered.singles[finals[best].first].gates.at(finals[best].second));
    finals.erase(finals.begin() + static_cast<long>(best));
  }
  return em.seq;
}

PulseSequence schedule_gate_level(const Circuit& circuit, const TimingParams& timing) {
  return schedule_gate_level(layerize(circuit), timing);
}

}  // namespace atomsched
