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

#include "atomsched/pulse_scheduler.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>
#include <utility>

#include "atomsched/errors.hpp"

namespace atomsched {

namespace {

// A single-qubit gate's circuit position: (single layer index, qubit).
using GateKey = std::pair<int, QubitIndex>;

bool member_of(const MczGate& mcz, QubitIndex q) {
  return std::binary_search(mcz.qubits.begin(), mcz.qubits.end(), q);
}

}  // namespace

AbsorptionPlan plan_absorption(const LayeredCircuit& layered) {
  AbsorptionPlan plan;
  plan.n_qubits = layered.n_qubits;
  std::set<GateKey> consumed;  // single-qubit gates claimed by some block
  bool have_prev = false;
  QubitIndex prev_border = 0;
  for (int k = 0; k < static_cast<int>(layered.multis.size()); ++k) {
    for (const MczGate& mcz : layered.multis[k].gates) {
      const int n = static_cast<int>(mcz.qubits.size());
      struct Candidate {
        QubitIndex q = 0;
        bool before = false;
        bool after = false;
        int tier = 0;  // 0 = no adjacent gate, not selectable
      };
      std::vector<Candidate> cands;
      for (QubitIndex q : mcz.qubits) {
        Candidate c;
        c.q = q;
        c.before = layered.singles[k].gates.count(q) != 0 && consumed.count({k, q}) == 0;
        c.after = k + 1 < static_cast<int>(layered.singles.size()) &&
                  layered.singles[k + 1].gates.count(q) != 0 &&
                  consumed.count({k + 1, q}) == 0;
        if (c.before && have_prev && q == prev_border) {
          c.tier = 1;
        } else if (c.before && c.after) {
          c.tier = 2;
        } else if (c.before) {
          c.tier = 3;
        } else if (c.after) {
          c.tier = 4;
        }
        cands.push_back(c);
      }

      std::vector<Candidate> picks;
      for (const Candidate& c : cands) {
        if (c.tier > 0) picks.push_back(c);
      }
      std::sort(picks.begin(), picks.end(), [](const Candidate& a, const Candidate& b) {
        return std::tie(a.tier, a.q) < std::tie(b.tier, b.q);
      });
      if (static_cast<int>(picks.size()) > n - 1) picks.resize(n - 1);

      BlockPlan bp;
      bp.mcz = mcz;
      bp.layer = k;
      std::set<QubitIndex> selected;
      for (const Candidate& c : picks) {
        selected.insert(c.q);
        if (c.before) {
          bp.absorbed_before.emplace(c.q, layered.singles[k].gates.at(c.q));
          consumed.insert({k, c.q});
        }
        if (c.after) {
          bp.absorbed_after.emplace(c.q, layered.singles[k + 1].gates.at(c.q));
          consumed.insert({k + 1, c.q});
        }
      }

      // Border: unselected qubit with the fewest absorbable gates; it stays
      // busy for the whole train, so wasting absorption capacity on it hurts
      // least.  At most n-1 qubits are selected, so one always remains.
      std::optional<std::pair<int, QubitIndex>> border_key;
      for (const Candidate& c : cands) {
        if (selected.count(c.q) != 0) continue;
        std::pair<int, QubitIndex> key{(c.before ? 1 : 0) + (c.after ? 1 : 0), c.q};
        if (!border_key || key < *border_key) border_key = key;
      }
      bp.border = border_key->second;

      // The 2pi recipient has the shortest involvement window, so hand it to
      // a qubit absorbing on both sides when one exists.
      std::optional<QubitIndex> two_pi;
      for (QubitIndex q : mcz.qubits) {
        if (bp.absorbed_before.count(q) != 0 && bp.absorbed_after.count(q) != 0) {
          two_pi = q;
          break;
        }
      }
      if (!two_pi) {
        for (QubitIndex q : mcz.qubits) {
          if (q != bp.border) {
            two_pi = q;
            break;
          }
        }
      }
      bp.two_pi_recipient = *two_pi;

      have_prev = true;
      prev_border = bp.border;
      plan.blocks.push_back(std::move(bp));
    }
  }
  return plan;
}

ScheduleOrder order_blocks(const LayeredCircuit& layered, const AbsorptionPlan& plan) {
  ScheduleOrder order;
  order.plan = plan;
  order.items.resize(plan.blocks.size());
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) order.items[i].plan_index = i;

  std::set<GateKey> scheduled;
  for (const BlockPlan& bp : plan.blocks) {
    for (const auto& [q, g] : bp.absorbed_before) scheduled.insert({bp.layer, q});
    for (const auto& [q, g] : bp.absorbed_after) scheduled.insert({bp.layer + 1, q});
  }

  std::vector<int> last_multi(static_cast<std::size_t>(layered.n_qubits), -1);
  for (int k = 0; k < static_cast<int>(layered.multis.size()); ++k) {
    for (const MczGate& m : layered.multis[k].gates) {
      for (QubitIndex q : m.qubits) last_multi[static_cast<std::size_t>(q)] = k;
    }
  }
  std::map<GateKey, std::size_t> block_of;  // (multi layer, member) -> plan index
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    for (QubitIndex q : plan.blocks[i].mcz.qubits) block_of[{plan.blocks[i].layer, q}] = i;
  }

  // Index of the block a gate at (layer j, qubit q) must follow; -1 if none.
  auto predecessor_block = [&](int j, QubitIndex q) -> long {
    if (j == 0) return -1;
    auto it = block_of.find({j - 1, q});
    return it == block_of.end() ? -1 : static_cast<long>(it->second);
  };
  auto is_final = [&](int j, QubitIndex q) {
    return last_multi[static_cast<std::size_t>(q)] < j;
  };
  auto placed = [&](int j, QubitIndex q) {
    return PlacedGate{layered.singles[j].gates.at(q), j};
  };

  for (std::size_t i = 0; i < plan.blocks.size(); ++i) {
    const BlockPlan& bp = plan.blocks[i];
    std::vector<GateKey> preceding;
    for (int j = 0; j <= bp.layer; ++j) {
      for (QubitIndex q : bp.mcz.qubits) {
        if (layered.singles[j].gates.count(q) != 0 && scheduled.count({j, q}) == 0) {
          preceding.push_back({j, q});
        }
      }
    }
    std::sort(preceding.begin(), preceding.end());
    if (!preceding.empty()) {
      for (const auto& [j, q] : preceding) {
        if (i > 0 && !member_of(plan.blocks[i - 1].mcz, q)) {
          order.items[i - 1].parallel_gates.push_back(placed(j, q));
        } else {
          order.items[i].pre_gates.push_back(placed(j, q));
        }
        scheduled.insert({j, q});
      }
    } else if (i > 0) {
      // Nothing forced before this block: let a ready final gate ride along
      // with the previous one.  Earliest circuit position wins.
      std::optional<GateKey> pick;
      for (int j = 0; j < static_cast<int>(layered.singles.size()) && !pick; ++j) {
        for (const auto& [q, g] : layered.singles[j].gates) {
          if (scheduled.count({j, q}) != 0 || !is_final(j, q)) continue;
          if (predecessor_block(j, q) <= static_cast<long>(i) - 2) {
            pick = GateKey{j, q};
            break;
          }
        }
      }
      if (pick) {
        order.items[i - 1].parallel_gates.push_back(placed(pick->first, pick->second));
        scheduled.insert(*pick);
      }
    }
  }

  // Whatever remains is a final gate: ride along with a later block while its
  // span has room, earliest circuit position first; the rest trail.  At
  // delta_pi == delta_t a 2N-1 pulse train spans 2N-1 rotation slots, and the
  // absorbed gates already occupy some of them.
  auto has_room = [&](std::size_t b) {
    const BlockPlan& host = plan.blocks[b];
    const int slots = 2 * static_cast<int>(host.mcz.qubits.size()) - 1;
    const int used = static_cast<int>(host.absorbed_before.size() + host.absorbed_after.size() +
                                      order.items[b].parallel_gates.size());
    return used < slots;
  };
  std::vector<GateKey> rest;
  for (int j = 0; j < static_cast<int>(layered.singles.size()); ++j) {
    for (const auto& [q, g] : layered.singles[j].gates) {
      if (scheduled.count({j, q}) == 0) rest.push_back({j, q});
    }
  }
  std::sort(rest.begin(), rest.end());
  for (const auto& [j, q] : rest) {
    const long p = predecessor_block(j, q);
    bool filled = false;
    for (std::size_t b = static_cast<std::size_t>(p + 1); b < order.items.size(); ++b) {
      if (!member_of(plan.blocks[b].mcz, q) && has_room(b)) {
        order.items[b].parallel_gates.push_back(placed(j, q));
        filled = true;
        break;
      }
    }
    if (!filled) order.trailing.push_back(placed(j, q));
  }
  return order;
}

namespace {

struct TrainLayout {
  std::vector<std::pair<QubitIndex, PulseRole>> train;
  std::vector<Ticks> offsets;  // pulse starts relative to the block start
  Ticks span{0};
  std::map<QubitIndex, Ticks> first_own;
  std::map<QubitIndex, Ticks> last_own_end;
};

TrainLayout layout_train(const BlockPlan& bp, const TimingParams& t) {
  TrainLayout lay;
  lay.train = mcz_pulse_train(bp.mcz.qubits, bp.border, bp.two_pi_recipient);
  Ticks off{0};
  for (std::size_t p = 0; p < lay.train.size(); ++p) {
    const QubitIndex q = lay.train[p].first;
    const Ticks dur = std::holds_alternative<TwoPiRole>(lay.train[p].second)
                          ? Ticks(2) * t.delta_pi
                          : t.delta_pi;
    lay.offsets.push_back(off);
    if (lay.first_own.count(q) == 0) lay.first_own[q] = off;
    lay.last_own_end[q] = off + dur;
    off = off + dur;
    if (p + 1 < lay.train.size()) off = off + t.delta_t;
  }
  lay.span = off;
  return lay;
}

struct Emitter {
  TimingParams t;
  PulseSequence seq;
  Ticks ryd_free{0};
  Ticks ram_free{0};
  std::optional<QubitIndex> ryd_target;
  std::optional<QubitIndex> ram_target;
  std::vector<Ticks> qfree;

  void raman_gate(const RGate& g, std::optional<int> block) {
    const QubitIndex q = g.qubit;
    const bool rt = !(ram_target && *ram_target == q);
    Ticks start = qfree[static_cast<std::size_t>(q)];
    const Ticks channel = rt ? ram_free + t.delta_t : ram_free;
    if (channel > start) start = channel;
    if (rt) {
      Instruction ins;
      ins.channel = Channel::Raman;
      ins.kind = Retarget{q, t.delta_t};
      ins.t_start = start - t.delta_t;
      ins.block_id = block;
      seq.raman.push_back(ins);
    }
    Instruction pulse;
    pulse.channel = Channel::Raman;
    pulse.kind = Pulse{q, t.delta_pi, RamanRole{g.theta, g.phi}};
    pulse.t_start = start;
    pulse.block_id = block;
    seq.raman.push_back(pulse);
    ram_free = start + t.delta_pi;
    ram_target = q;
    qfree[static_cast<std::size_t>(q)] = ram_free;
  }

  // Places the train as early as the channel and every member allow.
  // Returns true when the Rydberg channel sat idle beyond its retarget.
  bool block(const BlockPlan& bp, const TrainLayout& lay, int id) {
    const bool rt = !(ryd_target && *ryd_target == bp.border);
    const Ticks base = rt ? ryd_free + t.delta_t : ryd_free;
    Ticks t0 = base;
    for (QubitIndex q : bp.mcz.qubits) {
      const Ticks need = qfree[static_cast<std::size_t>(q)] - lay.first_own.at(q);
      if (need > t0) t0 = need;
    }
    if (rt) {
      Instruction ins;
      ins.channel = Channel::Rydberg;
      ins.kind = Retarget{bp.border, t.delta_t};
      ins.t_start = t0 - t.delta_t;
      ins.block_id = id;
      seq.rydberg.push_back(ins);
    }
    for (std::size_t p = 0; p < lay.train.size(); ++p) {
      const QubitIndex q = lay.train[p].first;
      const PulseRole& role = lay.train[p].second;
      const Ticks dur =
          std::holds_alternative<TwoPiRole>(role) ? Ticks(2) * t.delta_pi : t.delta_pi;
      if (p > 0) {
        Instruction ins;
        ins.channel = Channel::Rydberg;
        ins.kind = Retarget{q, t.delta_t};
        ins.t_start = t0 + lay.offsets[p] - t.delta_t;
        ins.block_id = id;
        seq.rydberg.push_back(ins);
      }
      Instruction pulse;
      pulse.channel = Channel::Rydberg;
      pulse.kind = Pulse{q, dur, role};
      pulse.t_start = t0 + lay.offsets[p];
      pulse.block_id = id;
      seq.rydberg.push_back(pulse);
    }
    ryd_free = t0 + lay.span;
    ryd_target = bp.border;
    for (QubitIndex q : bp.mcz.qubits) {
      qfree[static_cast<std::size_t>(q)] = t0 + lay.last_own_end.at(q);
    }
    return t0 > base;
  }
};

}  // namespace

EmitReport emit_timeline_report(const ScheduleOrder& order, const TimingParams& timing,
                                int n_qubits) {
  check_timing(timing);
  Emitter em;
  em.t = timing;
  em.seq.n_qubits = n_qubits;
  em.seq.timing = timing;
  em.qfree.assign(static_cast<std::size_t>(n_qubits), Ticks(0));

  EmitReport rep;
  for (std::size_t i = 0; i < order.items.size(); ++i) {
    const ScheduledBlock& item = order.items[i];
    const BlockPlan& bp = order.plan.blocks[item.plan_index];
    const int id = static_cast<int>(item.plan_index);
    const TrainLayout lay = layout_train(bp, timing);

    if (!item.pre_gates.empty()) rep.pre_gate_blocks.push_back(id);

    if (i == 0) {
      // The first block's lead-in has no span to hide in: pre gates, then the
      // absorbed-before gates in train order so each ends before its qubit's
      // window opens without queueing behind a later window.
      for (const PlacedGate& pg : item.pre_gates) em.raman_gate(pg.gate, std::nullopt);
      std::vector<QubitIndex> before_order;
      for (const auto& [q, g] : bp.absorbed_before) before_order.push_back(q);
      std::sort(before_order.begin(), before_order.end(), [&](QubitIndex a, QubitIndex b) {
        return lay.first_own.at(a) < lay.first_own.at(b);
      });
      for (QubitIndex q : before_order) em.raman_gate(bp.absorbed_before.at(q), id);
    }

    if (em.block(bp, lay, id)) rep.idle_blocks.push_back(id);

    // Everything the channel must fit before the next train's pulses shares
    // this block's span: parallel gates, absorbed-after gates, and the next
    // block's lead-in.  Rotations the next train waits for go first, ordered
    // by that train's visit to their qubit, so the following block never
    // stalls behind a spectator's rotation; the rest follow by release time.
    struct SpanItem {
      RGate gate;
      std::optional<int> tag;
      Ticks release{0};
      std::optional<Ticks> visit;  // next train's first pulse offset, if member
    };
    std::vector<SpanItem> span_items;
    const auto add = [&](const RGate& g, std::optional<int> tag) {
      span_items.push_back({g, tag, em.qfree[static_cast<std::size_t>(g.qubit)], {}});
    };
    for (const PlacedGate& pg : item.parallel_gates) add(pg.gate, std::nullopt);
    // qfree holds the qubit's window end once the train is placed.
    for (const auto& [q, g] : bp.absorbed_after) add(g, id);
    if (i + 1 < order.items.size()) {
      const ScheduledBlock& nitem = order.items[i + 1];
      const BlockPlan& nb = order.plan.blocks[nitem.plan_index];
      const TrainLayout nlay = layout_train(nb, timing);
      for (const PlacedGate& pg : nitem.pre_gates) add(pg.gate, std::nullopt);
      for (const auto& [q, g] : nb.absorbed_before) {
        add(g, static_cast<int>(nitem.plan_index));
      }
      for (SpanItem& si : span_items) {
        if (member_of(nb.mcz, si.gate.qubit)) si.visit = nlay.first_own.at(si.gate.qubit);
      }
    }
    std::sort(span_items.begin(), span_items.end(), [](const SpanItem& a, const SpanItem& b) {
      const bool av = a.visit.has_value();
      const bool bv = b.visit.has_value();
      if (av != bv) return av;
      if (av && *a.visit != *b.visit) return *a.visit < *b.visit;
      if (a.release != b.release) return a.release < b.release;
      return a.gate.qubit < b.gate.qubit;
    });
    // Dispatch in urgency order, except that while the most urgent rotation
    // is still unreleased, a later one may run first when it provably ends
    // (plus the urgent one's retarget) by that release: the channel never
    // sits empty waiting when safe work is available.
    const auto pulse_start = [&](const SpanItem& si) {
      const Ticks channel = em.ram_free + timing.delta_t;
      return si.release > channel ? si.release : channel;
    };
    std::vector<bool> emitted(span_items.size(), false);
    for (std::size_t left = span_items.size(); left > 0; --left) {
      std::size_t u = 0;
      while (emitted[u]) ++u;
      std::size_t pick = u;
      Ticks pick_start = pulse_start(span_items[u]);
      const Ticks urgent_start = pick_start;
      for (std::size_t k = u + 1; k < span_items.size(); ++k) {
        if (emitted[k]) continue;
        const Ticks s = pulse_start(span_items[k]);
        if (s + timing.delta_pi + timing.delta_t <= urgent_start &&
            (pick == u || s < pick_start)) {
          pick = k;
          pick_start = s;
        }
      }
      em.raman_gate(span_items[pick].gate, span_items[pick].tag);
      emitted[pick] = true;
    }
  }
  for (const PlacedGate& pg : order.trailing) em.raman_gate(pg.gate, std::nullopt);

  rep.seq = std::move(em.seq);
  return rep;
}

PulseSequence emit_timeline(const ScheduleOrder& order, const TimingParams& timing,
                            int n_qubits) {
  return emit_timeline_report(order, timing, n_qubits).seq;
}

EmitReport schedule_pulse_level_report(const Circuit& circuit, const TimingParams& timing) {
  const LayeredCircuit layered = layerize(circuit);
  const AbsorptionPlan plan = plan_absorption(layered);
  const ScheduleOrder order = order_blocks(layered, plan);
  return emit_timeline_report(order, timing, layered.n_qubits);
}

PulseSequence schedule_pulse_level(const Circuit& circuit, const TimingParams& timing) {
  return schedule_pulse_level_report(circuit, timing).seq;
}

}  // namespace atomsched
