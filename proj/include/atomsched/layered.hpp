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

#include <map>
#include <vector>

#include "atomsched/circuit.hpp"

namespace atomsched {

/// One alternation slot of single-qubit pulses: at most one R per qubit.
struct SingleQubitLayer {
  std::map<QubitIndex, RGate> gates;
  friend bool operator==(const SingleQubitLayer&, const SingleQubitLayer&);
};

/// One alternation slot of MCZ gates on pairwise-disjoint qubit sets,
/// kept sorted by lowest member qubit.
struct MultiQubitLayer {
  std::vector<MczGate> gates;
  friend bool operator==(const MultiQubitLayer&, const MultiQubitLayer&);
};

/// Alternating structure S0 M0 S1 M1 ... S_k: singles always outnumber
/// multis by one (both empty only for the gateless circuit).  A qubit may
/// hold a gate in S_i (i > 0) only if it took part in an MCZ of M_{i-1}.
struct LayeredCircuit {
  int n_qubits = 0;
  std::vector<SingleQubitLayer> singles;
  std::vector<MultiQubitLayer> multis;

  /// Depth in the benchmark's sense: the number of multi-qubit layers.
  [[nodiscard]] int layer_count() const { return static_cast<int>(multis.size()); }
  friend bool operator==(const LayeredCircuit&, const LayeredCircuit&);
};

/// Greedy left-packing of a native circuit into the alternating structure;
/// gates are placed in input order, each in the earliest slot consistent
/// with per-qubit ordering and the eligibility rule above.
///
/// Inputs must be native, merged and ordered (a redundant leading MCZ or an
/// unmerged 1q run cannot be represented); qubits outside every MCZ are
/// accepted, since scheduling handles them, and are left to
/// validate_practical_form to report.
LayeredCircuit layerize(const Circuit& circuit);

/// Inverse of layerize up to empty-slot elision: emits S0 M0 S1 ... in
/// ascending qubit order within each layer.
Circuit flatten(const LayeredCircuit& layered);

}  // namespace atomsched
