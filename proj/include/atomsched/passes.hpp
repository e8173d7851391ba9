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

#include <utility>
#include <vector>

#include "atomsched/circuit.hpp"

namespace atomsched {

/// Fuses maximal runs of single-qubit gates on each qubit (runs are broken by
/// any multi-qubit gate touching the qubit).  A fused run becomes one
/// R(theta, phi) followed by one VirtualZ, Euler-decomposed from the exact
/// 2x2 product; pure frame changes stay VirtualZ, identities are dropped.
/// Single-gate runs pass through untouched unless identity-equivalent.
Circuit merge_adjacent_1q(const Circuit& circuit);

/// Removes every VirtualZ by commuting it rightward: diagonal multi-qubit
/// gates pass it through, R(theta, phi) becomes R(theta, phi - z) under a
/// pending frame angle z, and trailing frame angles are dropped (they do not
/// affect computational-basis measurement).  H and X under a pending frame
/// are rewritten to their native R form; a CNOT target with a pending frame
/// takes a two-pulse expansion of the frame change.
Circuit eliminate_virtual_z(const Circuit& circuit);

/// Drops every MCZ that has a member qubit untouched by any earlier
/// non-diagonal gate: such a qubit is certainly in |0>, so the MCZ acts as
/// identity.  Looped to fixpoint.
Circuit remove_redundant_mcz(const Circuit& circuit);

/// Removes qubits that take part in no multi-qubit gate, reindexing the rest
/// densely.  The removed qubits and their gates are recorded under the
/// "stripped" metadata key.  Returns the reduced circuit and the removed
/// original indices.
std::pair<Circuit, std::vector<QubitIndex>> strip_classical_qubits(const Circuit& circuit);

/// merge -> eliminate_virtual_z -> remove_redundant_mcz -> strip -> merge.
/// On native-gate input with valid connectivity the result is practical-form.
Circuit optimize_pipeline(const Circuit& circuit);

}  // namespace atomsched
