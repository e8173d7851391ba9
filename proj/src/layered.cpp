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

#include "atomsched/layered.hpp"

#include <algorithm>

namespace atomsched {

bool operator==(const SingleQubitLayer& a, const SingleQubitLayer& b) {
  if (a.gates.size() != b.gates.size()) return false;
  auto it = b.gates.begin();
  for (const auto& [q, g] : a.gates) {
    if (it->first != q || it->second.theta != g.theta || it->second.phi != g.phi) return false;
    ++it;
  }
  return true;
}

bool operator==(const MultiQubitLayer& a, const MultiQubitLayer& b) {
  return std::equal(a.gates.begin(), a.gates.end(), b.gates.begin(), b.gates.end(),
                    [](const MczGate& x, const MczGate& y) { return x.qubits == y.qubits; });
}

bool operator==(const LayeredCircuit& a, const LayeredCircuit& b) {
  return a.n_qubits == b.n_qubits && a.singles == b.singles && a.multis == b.multis;
}

LayeredCircuit layerize(const Circuit& circuit) {
  {
    ValidationReport report = validate_practical_form(circuit);
    // Criterion 5 (qubits outside every MCZ) does not block packing.
    std::erase_if(report.violations, [](const Violation& v) { return v.criterion == 5; });
    if (!report.ok()) throw ValidationError(std::move(report));
  }

  LayeredCircuit out;
  out.n_qubits = circuit.n_qubits;
  out.singles.emplace_back();
  // Earliest multi layer a new MCZ on q may join; q's next 1q slot is the
  // single layer of the same index.
  std::vector<int> next_multi(static_cast<std::size_t>(circuit.n_qubits), 0);
  std::vector<std::vector<bool>> multi_used;  // per multi layer, per qubit

  for (const Gate& gate : circuit.gates) {
    if (const auto* r = std::get_if<RGate>(&gate)) {
      const int k = next_multi[static_cast<std::size_t>(r->qubit)];
      // Validation guarantees the slot is free (criterion 3) and reachable
      // (first layer or membership in the preceding multi layer).
      out.singles[static_cast<std::size_t>(k)].gates.emplace(r->qubit, *r);
      continue;
    }
    const auto& mcz = std::get<MczGate>(gate);
    int k = 0;
    for (QubitIndex q : mcz.qubits) k = std::max(k, next_multi[static_cast<std::size_t>(q)]);
    const auto occupied = [&](int layer) {
      return std::any_of(mcz.qubits.begin(), mcz.qubits.end(), [&](QubitIndex q) {
        return multi_used[static_cast<std::size_t>(layer)][static_cast<std::size_t>(q)];
      });
    };
    while (k < static_cast<int>(out.multis.size()) && occupied(k)) ++k;
    while (k >= static_cast<int>(out.multis.size())) {
      out.multis.emplace_back();
      out.singles.emplace_back();
      multi_used.emplace_back(static_cast<std::size_t>(circuit.n_qubits), false);
    }
    out.multis[static_cast<std::size_t>(k)].gates.push_back(mcz);
    for (QubitIndex q : mcz.qubits) {
      multi_used[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] = true;
      next_multi[static_cast<std::size_t>(q)] = k + 1;
    }
  }

  for (auto& layer : out.multis) {
    std::sort(layer.gates.begin(), layer.gates.end(),
              [](const MczGate& a, const MczGate& b) { return a.qubits[0] < b.qubits[0]; });
  }
  return out;
}

Circuit flatten(const LayeredCircuit& layered) {
  Circuit out;
  out.n_qubits = layered.n_qubits;
  for (std::size_t k = 0; k < layered.singles.size(); ++k) {
    for (const auto& [q, r] : layered.singles[k].gates) out.gates.emplace_back(r);
    if (k < layered.multis.size()) {
      for (const auto& mcz : layered.multis[k].gates) out.gates.emplace_back(mcz);
    }
  }
  return out;
}

}  // namespace atomsched
