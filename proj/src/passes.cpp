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

#include "atomsched/passes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <map>
#include <optional>

#include <nlohmann/json.hpp>

#include "atomsched/errors.hpp"
#include "atomsched/su2.hpp"

namespace atomsched {

namespace {

bool is_1q(const Gate& gate) { return gate_qubits(gate).size() == 1; }

// A VirtualZ angle is a no-op when congruent to 0 mod 2pi.
bool trivial_frame_angle(double alpha) {
  const double a = normalize_phi(alpha);
  return a < kIdentityThreshold || 2.0 * std::numbers::pi - a < kIdentityThreshold;
}

}  // namespace

Eigen::Matrix2cd gate_matrix_1q(const Gate& gate) {
  if (const auto* r = std::get_if<RGate>(&gate)) return r_matrix(r->theta, r->phi);
  if (const auto* z = std::get_if<VzGate>(&gate)) return vz_matrix(z->angle);
  if (std::holds_alternative<HGate>(gate)) return h_matrix();
  if (std::holds_alternative<XGate>(gate)) return x_matrix();
  throw Error("gate_matrix_1q: not a single-qubit gate");
}

OneQubitDecomposition decompose_1q(const Eigen::Matrix2cd& u, QubitIndex qubit) {
  OneQubitDecomposition out;
  if (is_identity_up_to_phase(u)) return out;

  const double s = std::abs(u(1, 0));
  const double c = std::abs(u(0, 0));
  if (s < 0.5 * kIdentityThreshold) {
    out.vz = VzGate{qubit, normalize_phi(std::arg(u(1, 1)) - std::arg(u(0, 0)))};
    return out;
  }

  const double theta = 2.0 * std::atan2(s, c);
  double phi = 0.0;
  double lambda = 0.0;
  if (c >= 0.5 * kIdentityThreshold) {
    // u = e^{i delta} VZ(lambda) R(theta, phi) with delta = arg(u00).
    phi = std::arg(u(0, 0)) - std::numbers::pi / 2.0 - std::arg(u(0, 1));
    lambda = std::arg(u(1, 1)) - std::arg(u(0, 0));
  } else {
    // theta = pi: the diagonal vanishes; fix phi = 0 and read lambda off the
    // anti-diagonal (arg u10 - arg u01 = lambda + 2 phi).
    lambda = std::arg(u(1, 0)) - std::arg(u(0, 1));
  }
  out.r = make_r(qubit, theta, phi);
  if (!trivial_frame_angle(lambda)) out.vz = VzGate{qubit, normalize_phi(lambda)};
  return out;
}

Circuit merge_adjacent_1q(const Circuit& circuit) {
  struct Run {
    std::size_t anchor = 0;
    Eigen::Matrix2cd u;
    int count = 0;
    Gate first;
  };
  // Output gates keyed by (position of the run's first gate, emission rank).
  std::vector<std::pair<std::pair<std::size_t, int>, Gate>> placed;
  std::map<QubitIndex, Run> open;

  auto close = [&](QubitIndex q) {
    auto it = open.find(q);
    if (it == open.end()) return;
    const Run& run = it->second;
    if (!is_identity_up_to_phase(run.u)) {
      if (run.count == 1) {
        placed.push_back({{run.anchor, 0}, run.first});
      } else {
        const auto dec = decompose_1q(run.u, q);
        if (dec.r) placed.push_back({{run.anchor, 0}, *dec.r});
        if (dec.vz) placed.push_back({{run.anchor, 1}, *dec.vz});
      }
    }
    open.erase(it);
  };

  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& gate = circuit.gates[i];
    if (is_1q(gate)) {
      const QubitIndex q = gate_qubits(gate)[0];
      auto it = open.find(q);
      if (it == open.end()) {
        open[q] = Run{i, gate_matrix_1q(gate), 1, gate};
      } else {
        it->second.u = gate_matrix_1q(gate) * it->second.u;
        it->second.count += 1;
      }
    } else {
      for (QubitIndex q : gate_qubits(gate)) close(q);
      placed.push_back({{i, 0}, gate});
    }
  }
  while (!open.empty()) close(open.begin()->first);

  std::sort(placed.begin(), placed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.metadata_json = circuit.metadata_json;
  out.gates.reserve(placed.size());
  for (auto& [key, gate] : placed) out.gates.push_back(std::move(gate));
  return out;
}

Circuit eliminate_virtual_z(const Circuit& circuit) {
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.metadata_json = circuit.metadata_json;
  std::vector<double> frame(static_cast<std::size_t>(circuit.n_qubits), 0.0);

  for (const Gate& gate : circuit.gates) {
    if (const auto* z = std::get_if<VzGate>(&gate)) {
      frame[static_cast<std::size_t>(z->qubit)] += z->angle;
    } else if (const auto* r = std::get_if<RGate>(&gate)) {
      out.gates.push_back(make_r(r->qubit, r->theta, r->phi - frame[static_cast<std::size_t>(r->qubit)]));
    } else if (const auto* h = std::get_if<HGate>(&gate)) {
      double& z_q = frame[static_cast<std::size_t>(h->qubit)];
      if (trivial_frame_angle(z_q)) {
        out.gates.push_back(gate);
      } else {
        // H = VZ(pi) then R(pi/2, pi/2); the leading VZ joins the frame.
        z_q += std::numbers::pi;
        out.gates.push_back(make_r(h->qubit, std::numbers::pi / 2.0, std::numbers::pi / 2.0 - z_q));
      }
    } else if (const auto* x = std::get_if<XGate>(&gate)) {
      const double z_q = frame[static_cast<std::size_t>(x->qubit)];
      if (trivial_frame_angle(z_q)) {
        out.gates.push_back(gate);
      } else {
        out.gates.push_back(make_r(x->qubit, std::numbers::pi, -z_q));
      }
    } else if (const auto* cx = std::get_if<CnotGate>(&gate)) {
      // The control is diagonal (frame commutes); the target is not.  A
      // pending target frame Z(a) expands to R(pi, 0) R(pi, a/2) up to phase.
      double& z_t = frame[static_cast<std::size_t>(cx->target)];
      if (!trivial_frame_angle(z_t)) {
        out.gates.push_back(make_r(cx->target, std::numbers::pi, 0.0));
        out.gates.push_back(make_r(cx->target, std::numbers::pi, z_t / 2.0));
        z_t = 0.0;
      }
      out.gates.push_back(gate);
    } else if (const auto* sw = std::get_if<SwapGate>(&gate)) {
      std::swap(frame[static_cast<std::size_t>(sw->a)], frame[static_cast<std::size_t>(sw->b)]);
      out.gates.push_back(gate);
    } else {
      // MCZ and CCZ are diagonal: pending frames commute through.
      out.gates.push_back(gate);
    }
  }
  return out;
}

namespace {

bool is_nondiagonal_1q(const Gate& gate) {
  if (const auto* r = std::get_if<RGate>(&gate)) {
    return std::abs(std::sin(r->theta / 2.0)) >= 0.5 * kIdentityThreshold;
  }
  return std::holds_alternative<HGate>(gate) || std::holds_alternative<XGate>(gate);
}

Circuit remove_redundant_mcz_once(const Circuit& circuit, bool& changed) {
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.metadata_json = circuit.metadata_json;
  // certainly_zero[q]: q has seen no non-diagonal gate, so it is in |0>.
  std::vector<bool> certainly_zero(static_cast<std::size_t>(circuit.n_qubits), true);

  for (const Gate& gate : circuit.gates) {
    if (const auto* mcz = std::get_if<MczGate>(&gate)) {
      const bool redundant = std::any_of(mcz->qubits.begin(), mcz->qubits.end(),
                                         [&](QubitIndex q) { return certainly_zero[static_cast<std::size_t>(q)]; });
      if (redundant) {
        changed = true;
        continue;
      }
    } else if (const auto* ccz = std::get_if<CczGate>(&gate)) {
      if (certainly_zero[static_cast<std::size_t>(ccz->a)] ||
          certainly_zero[static_cast<std::size_t>(ccz->b)] ||
          certainly_zero[static_cast<std::size_t>(ccz->c)]) {
        changed = true;
        continue;
      }
    } else if (const auto* cx = std::get_if<CnotGate>(&gate)) {
      // A certainly-|0> control makes the CNOT inert; otherwise the target
      // is no longer certain.
      if (!certainly_zero[static_cast<std::size_t>(cx->control)]) {
        certainly_zero[static_cast<std::size_t>(cx->target)] = false;
      }
    } else if (const auto* sw = std::get_if<SwapGate>(&gate)) {
      const bool tmp = certainly_zero[static_cast<std::size_t>(sw->a)];
      certainly_zero[static_cast<std::size_t>(sw->a)] = certainly_zero[static_cast<std::size_t>(sw->b)];
      certainly_zero[static_cast<std::size_t>(sw->b)] = tmp;
    } else if (is_1q(gate) && is_nondiagonal_1q(gate)) {
      certainly_zero[static_cast<std::size_t>(gate_qubits(gate)[0])] = false;
    }
    out.gates.push_back(gate);
  }
  return out;
}

}  // namespace

Circuit remove_redundant_mcz(const Circuit& circuit) {
  Circuit current = circuit;
  bool changed = true;
  while (changed) {
    changed = false;
    current = remove_redundant_mcz_once(current, changed);
  }
  return current;
}

std::pair<Circuit, std::vector<QubitIndex>> strip_classical_qubits(const Circuit& circuit) {
  std::vector<bool> entangled(static_cast<std::size_t>(circuit.n_qubits), false);
  for (const Gate& gate : circuit.gates) {
    const auto qubits = gate_qubits(gate);
    if (qubits.size() < 2) continue;
    for (QubitIndex q : qubits) entangled[static_cast<std::size_t>(q)] = true;
  }

  std::vector<QubitIndex> removed;
  std::vector<QubitIndex> remap(static_cast<std::size_t>(circuit.n_qubits), -1);
  int next = 0;
  for (QubitIndex q = 0; q < circuit.n_qubits; ++q) {
    if (entangled[static_cast<std::size_t>(q)]) {
      remap[static_cast<std::size_t>(q)] = next++;
    } else {
      removed.push_back(q);
    }
  }

  Circuit out;
  out.n_qubits = next;
  nlohmann::json stripped_gates = nlohmann::json::array();
  for (const Gate& gate : circuit.gates) {
    const auto qubits = gate_qubits(gate);
    if (qubits.size() == 1 && remap[static_cast<std::size_t>(qubits[0])] < 0) {
      stripped_gates.push_back(gate_to_json(gate));
      continue;
    }
    out.gates.push_back(relabel_gate(gate, remap));
  }

  nlohmann::json meta = circuit.metadata();
  meta["stripped"] = {{"qubits", removed}, {"gates", std::move(stripped_gates)}};
  out.set_metadata(meta);
  return {std::move(out), std::move(removed)};
}

Circuit optimize_pipeline(const Circuit& circuit) {
  Circuit c = merge_adjacent_1q(circuit);
  c = eliminate_virtual_z(c);
  c = remove_redundant_mcz(c);
  c = strip_classical_qubits(c).first;
  return merge_adjacent_1q(c);
}

}  // namespace atomsched
