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

#include <cstddef>
#include <map>
#include <vector>

#include "atomsched/layered.hpp"
#include "atomsched/sequence.hpp"

namespace atomsched {

/// Absorption decisions for one MCZ: which adjacent single-qubit gates run
/// inside the block's span, plus the train's border and 2pi assignments.
struct BlockPlan {
  MczGate mcz;
  int layer = 0;  // index of the MultiQubitLayer holding the gate
  QubitIndex border = 0;
  QubitIndex two_pi_recipient = 0;
  std::map<QubitIndex, RGate> absorbed_before;
  std::map<QubitIndex, RGate> absorbed_after;
};

struct AbsorptionPlan {
  int n_qubits = 0;
  std::vector<BlockPlan> blocks;  // analysis order: layer, then lowest qubit
};

/// A single-qubit gate still to be placed, remembered with the single-layer
/// index it came from (its circuit position is (layer, qubit)).
struct PlacedGate {
  RGate gate;
  int layer = 0;
};

struct ScheduledBlock {
  std::size_t plan_index = 0;
  /// Unabsorbed gates that must finish before the train reaches their qubit.
  std::vector<PlacedGate> pre_gates;
  /// Gates on qubits outside the block, free to run during its span.
  std::vector<PlacedGate> parallel_gates;
};

struct ScheduleOrder {
  AbsorptionPlan plan;
  std::vector<ScheduledBlock> items;  // one per plan block, same order
  std::vector<PlacedGate> trailing;
};

struct EmitReport {
  PulseSequence seq;
  /// Blocks whose train started later than channel-free + retarget.
  std::vector<int> idle_blocks;
  /// Blocks carrying pre gates (the only sites where idling is tolerated).
  std::vector<int> pre_gate_blocks;
};

/// Walks MCZs in analysis order and picks up to N-1 absorbing qubits per
/// gate by priority: (1) gate immediately before + qubit was the previous
/// block's border, (2) gates on both sides, (3) gate before, (4) gate after;
/// ties by lowest qubit.  Selected qubits absorb every available adjacent
/// gate (a gate between two MCZs is absorbed by at most one of them).  The
/// border is an unselected qubit with the fewest absorbable gates; the 2pi
/// recipient is a both-sides absorber when one exists, else the lowest
/// non-border qubit.
AbsorptionPlan plan_absorption(const LayeredCircuit& layered);

/// Sequences blocks in plan order and assigns every leftover single-qubit
/// gate a slot: unscheduled gates preceding a block attach in parallel with
/// the previous block when qubit-disjoint from it (else run as pre gates);
/// blocks with nothing preceding pick up a ready final gate instead; leftover
/// final gates ride later blocks while span room remains (a 2N-1 pulse train
/// hosts 2N-1 rotations at delta_pi == delta_t), the rest trail.
ScheduleOrder order_blocks(const LayeredCircuit& layered, const AbsorptionPlan& plan);

/// Greedy ASAP realization: the first block's pre and absorbed-before gates
/// open the sequence; each Rydberg train is placed at the earliest start
/// satisfying channel and per-qubit constraints; a block's span then hosts
/// its parallel and absorbed-after gates plus the next block's lead-in,
/// the next train's members first by visit offset and the rest by release
/// time; trailing gates last.  Raman retargets hug their pulse and are elided
/// when the channel already addresses the target.
EmitReport emit_timeline_report(const ScheduleOrder& order, const TimingParams& timing,
                                int n_qubits);
PulseSequence emit_timeline(const ScheduleOrder& order, const TimingParams& timing,
                            int n_qubits);

/// layerize -> plan_absorption -> order_blocks -> emit_timeline.
PulseSequence schedule_pulse_level(const Circuit& circuit, const TimingParams& timing);
EmitReport schedule_pulse_level_report(const Circuit& circuit, const TimingParams& timing);

}  // namespace atomsched
