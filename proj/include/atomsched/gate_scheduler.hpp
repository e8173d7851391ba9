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

#include "atomsched/layered.hpp"
#include "atomsched/sequence.hpp"

namespace atomsched {

/// Baseline scheduler that treats gates as atomic: a single-qubit gate is a
/// contiguous retarget+pulse unit needing both the Raman channel and its
/// qubit free, and an MCZ keeps every member busy for its whole train.  The
/// only concurrency is cross-channel: gates on disjoint qubits may overlap a
/// running block.  Multi layers are walked in order; within a layer, gates
/// whose qubits were involved most recently go last (ties: fewer preceding
/// single-qubit gates, then lowest qubit).  Each MCZ is preceded by its
/// pending single-qubit gates; trains use the lowest member as border and
/// the next as 2pi recipient.  Final single-qubit gates are appended last,
/// earliest-feasible first.
PulseSequence schedule_gate_level(const LayeredCircuit& layered, const TimingParams& timing);

/// layerize + the overload above.
PulseSequence schedule_gate_level(const Circuit& circuit, const TimingParams& timing);

}  // namespace atomsched
