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
#include "atomsched/device.hpp"

namespace atomsched {

/// Injective assignment of logical qubits to lattice sites.
struct Placement {
  std::vector<int> logical_to_site;
};

struct TranspileStats {
  int swaps_added = 0;
  int layers = 0;
  int qubits = 0;
};

/// Deterministic greedy placement: qubits ordered by first multi-qubit gate
/// appearance (ties by index), each placed on the free site minimizing the
/// interaction-weighted hop distance to already-placed partners (ties by
/// lowest site index).
Placement place_initial(const Circuit& circuit, const ConnectivityGraph& graph);

/// Relabels wires to sites (output n_qubits = graph size) and inserts SWAP
/// gates between adjacent sites until every multi-qubit gate acts on a
/// mutually connected site set.  Greedy: each SWAP strictly reduces the sum
/// of pairwise hop distances of the pending gate's sites, with a
/// shortest-path fallback when no single exchange improves.  Initial and
/// final placements and the SWAP count go into circuit metadata under
/// "placement".
Circuit route(const Circuit& circuit, const ConnectivityGraph& graph,
              const Placement& placement);

/// Lowers convenience gates: H -> VirtualZ(pi), R(pi/2, pi/2); X -> R(pi, 0);
/// CNOT -> H-conjugated CZ; SWAP -> 3 CNOTs; CCZ -> MCZ.  R/VirtualZ/MCZ pass
/// through.
Circuit decompose_nonnative(const Circuit& circuit);

/// place_initial -> route -> decompose_nonnative -> optimize_pipeline,
/// then layerize for the layer count.  Output wires are the surviving sites
/// in ascending order; metadata "sites" maps each wire to its lattice site.
std::pair<Circuit, TranspileStats> transpile(const Circuit& circuit,
                                             const ConnectivityGraph& graph);

}  // namespace atomsched
