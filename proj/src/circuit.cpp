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

#include "atomsched/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "atomsched/device.hpp"

namespace atomsched {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double normalize_phi(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0) r += kTwoPi;
  // fmod can land exactly on 2pi after the correction when phi is a tiny
  // negative number; fold that case back to 0.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double normalize_theta(double theta) {
  double r = std::fmod(theta, 2.0 * kTwoPi);
  if (r <= -kTwoPi) r += 2.0 * kTwoPi;
  if (r > kTwoPi) r -= 2.0 * kTwoPi;
  return r;
}

RGate make_r(QubitIndex qubit, double theta, double phi) {
  return RGate{qubit, normalize_theta(theta), normalize_phi(phi)};
}

MczGate make_mcz(std::vector<QubitIndex> qubits) {
  std::sort(qubits.begin(), qubits.end());
  if (qubits.size() < 2) throw Error("MCZ requires at least 2 qubits");
  if (std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
    throw Error("MCZ qubit set contains duplicates");
  }
  return MczGate{std::move(qubits)};
}

std::vector<QubitIndex> gate_qubits(const Gate& gate) {
  return std::visit(
      [](const auto& g) -> std::vector<QubitIndex> {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RGate> || std::is_same_v<T, VzGate> ||
                      std::is_same_v<T, HGate> || std::is_same_v<T, XGate>) {
          return {g.qubit};
        } else if constexpr (std::is_same_v<T, MczGate>) {
          return g.qubits;
        } else if constexpr (std::is_same_v<T, CnotGate>) {
          return {g.control, g.target};
        } else if constexpr (std::is_same_v<T, SwapGate>) {
          return {g.a, g.b};
        } else {
          static_assert(std::is_same_v<T, CczGate>);
          return {g.a, g.b, g.c};
        }
      },
      gate);
}

bool gate_touches(const Gate& gate, QubitIndex qubit) {
  const auto qs = gate_qubits(gate);
  return std::find(qs.begin(), qs.end(), qubit) != qs.end();
}

bool is_native(const Gate& gate) {
  return std::holds_alternative<RGate>(gate) || std::holds_alternative<VzGate>(gate) ||
         std::holds_alternative<MczGate>(gate);
}

Gate relabel_gate(const Gate& gate, const std::vector<QubitIndex>& map) {
  const auto at = [&](QubitIndex q) { return map[static_cast<std::size_t>(q)]; };
  return std::visit(
      [&](const auto& g) -> Gate {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RGate>) {
          return RGate{at(g.qubit), g.theta, g.phi};
        } else if constexpr (std::is_same_v<T, VzGate>) {
          return VzGate{at(g.qubit), g.angle};
        } else if constexpr (std::is_same_v<T, MczGate>) {
          std::vector<QubitIndex> qs;
          qs.reserve(g.qubits.size());
          for (QubitIndex q : g.qubits) qs.push_back(at(q));
          return make_mcz(std::move(qs));
        } else if constexpr (std::is_same_v<T, HGate>) {
          return HGate{at(g.qubit)};
        } else if constexpr (std::is_same_v<T, XGate>) {
          return XGate{at(g.qubit)};
        } else if constexpr (std::is_same_v<T, CnotGate>) {
          return CnotGate{at(g.control), at(g.target)};
        } else if constexpr (std::is_same_v<T, SwapGate>) {
          return SwapGate{at(g.a), at(g.b)};
        } else {
          static_assert(std::is_same_v<T, CczGate>);
          return CczGate{at(g.a), at(g.b), at(g.c)};
        }
      },
      gate);
}

nlohmann::json Circuit::metadata() const { return nlohmann::json::parse(metadata_json); }

void Circuit::set_metadata(const nlohmann::json& value) { metadata_json = value.dump(); }

bool ValidationReport::has_criterion(int criterion) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.criterion == criterion; });
}

std::string ValidationReport::str() const {
  std::ostringstream os;
  for (const auto& v : violations) {
    os << "criterion " << v.criterion << " at "
       << (v.site == Violation::Site::GateIndex ? "gate " : "qubit ") << v.location
       << ": " << v.message << "\n";
  }
  return os.str();
}

ValidationError::ValidationError(ValidationReport report)
    : Error("circuit is not in practical form:\n" + report.str()),
      report_(std::move(report)) {}

ValidationReport validate_practical_form(const Circuit& circuit,
                                         const ConnectivityGraph* graph) {
  ValidationReport report;
  const int n = circuit.n_qubits;

  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    for (QubitIndex q : gate_qubits(circuit.gates[i])) {
      if (q < 0 || q >= n) {
        report.violations.push_back({0, Violation::Site::GateIndex, static_cast<int>(i),
                                     "qubit index " + std::to_string(q) +
                                         " out of range for " + std::to_string(n) +
                                         " qubits"});
      }
    }
  }
  if (!report.ok()) return report;  // criteria scans assume valid indices

  // Criterion 1: native set only, and no frame changes left.
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const Gate& g = circuit.gates[i];
    if (!is_native(g)) {
      report.violations.push_back({1, Violation::Site::GateIndex, static_cast<int>(i),
                                   "convenience gate must be lowered to native gates"});
    } else if (std::holds_alternative<VzGate>(g)) {
      report.violations.push_back({1, Violation::Site::GateIndex, static_cast<int>(i),
                                   "frame change must be folded into pulse phases"});
    } else if (const auto* r = std::get_if<RGate>(&g)) {
      if (normalize_theta(r->theta) == 0.0) {
        report.violations.push_back({1, Violation::Site::GateIndex, static_cast<int>(i),
                                     "zero-angle pulse is redundant"});
      }
    }
  }

  // Criterion 2: every MCZ acts on a mutually connected site set (qubit i at
  // site i when a graph is supplied).
  if (graph != nullptr) {
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
      if (const auto* mcz = std::get_if<MczGate>(&circuit.gates[i])) {
        const std::set<int> sites(mcz->qubits.begin(), mcz->qubits.end());
        if (!is_mutually_connected(*graph, sites)) {
          report.violations.push_back({2, Violation::Site::GateIndex,
                                       static_cast<int>(i),
                                       "MCZ qubits are not mutually connected"});
        }
      }
    }
  }

  // Criterion 3: single-qubit runs merged.  A pulse on q directly after
  // another pulse on q, with no MCZ touching q in between, is unmerged.
  {
    std::vector<bool> last_was_1q(n, false);
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
      const Gate& g = circuit.gates[i];
      if (std::holds_alternative<MczGate>(g)) {
        for (QubitIndex q : gate_qubits(g)) last_was_1q[q] = false;
      } else {
        for (QubitIndex q : gate_qubits(g)) {
          if (last_was_1q[q]) {
            report.violations.push_back({3, Violation::Site::GateIndex,
                                         static_cast<int>(i),
                                         "consecutive single-qubit gates on qubit " +
                                             std::to_string(q) + " are unmerged"});
          }
          last_was_1q[q] = true;
        }
      }
    }
  }

  // Criterion 4: the first gate on every qubit is a pulse; an MCZ reached
  // with a fresh qubit acts on |0> and is redundant.
  {
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
      const Gate& g = circuit.gates[i];
      if (std::holds_alternative<MczGate>(g)) {
        for (QubitIndex q : gate_qubits(g)) {
          if (!seen[q]) {
            report.violations.push_back(
                {4, Violation::Site::GateIndex, static_cast<int>(i),
                 "MCZ reached with qubit " + std::to_string(q) + " still in |0>"});
          }
        }
      }
      for (QubitIndex q : gate_qubits(g)) seen[q] = true;
    }
  }

  // Criterion 5: every qubit participates in at least one MCZ.
  {
    std::vector<bool> in_mcz(n, false);
    for (const Gate& g : circuit.gates) {
      if (std::holds_alternative<MczGate>(g)) {
        for (QubitIndex q : gate_qubits(g)) in_mcz[q] = true;
      }
    }
    for (int q = 0; q < n; ++q) {
      if (!in_mcz[q]) {
        report.violations.push_back({5, Violation::Site::Qubit, q,
                                     "qubit participates in no multi-qubit gate"});
      }
    }
  }

  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const Violation& a, const Violation& b) {
                     return a.criterion < b.criterion;
                   });
  return report;
}

nlohmann::json gate_to_json(const Gate& gate) {
  nlohmann::json j;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, RGate>) {
          j = {{"kind", "R"}, {"qubit", g.qubit}, {"theta", g.theta}, {"phi", g.phi}};
        } else if constexpr (std::is_same_v<T, VzGate>) {
          j = {{"kind", "RZ"}, {"qubit", g.qubit}, {"angle", g.angle}};
        } else if constexpr (std::is_same_v<T, MczGate>) {
          j = {{"kind", "MCZ"}, {"qubits", g.qubits}};
        } else if constexpr (std::is_same_v<T, HGate>) {
          j = {{"kind", "H"}, {"qubit", g.qubit}};
        } else if constexpr (std::is_same_v<T, XGate>) {
          j = {{"kind", "X"}, {"qubit", g.qubit}};
        } else if constexpr (std::is_same_v<T, CnotGate>) {
          j = {{"kind", "CNOT"}, {"qubits", {g.control, g.target}}};
        } else if constexpr (std::is_same_v<T, SwapGate>) {
          j = {{"kind", "SWAP"}, {"qubits", {g.a, g.b}}};
        } else {
          static_assert(std::is_same_v<T, CczGate>);
          j = {{"kind", "CCZ"}, {"qubits", {g.a, g.b, g.c}}};
        }
      },
      gate);
  return j;
}

namespace {

std::vector<QubitIndex> qubit_list(const nlohmann::json& j, std::size_t expect = 0) {
  if (!j.is_array()) throw ParseError("gate field 'qubits' must be an array");
  std::vector<QubitIndex> qs = j.get<std::vector<QubitIndex>>();
  if (expect != 0 && qs.size() != expect) {
    throw ParseError("gate expects " + std::to_string(expect) + " qubits, got " +
                     std::to_string(qs.size()));
  }
  return qs;
}

}  // namespace

Gate gate_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "R") {
    return make_r(j.at("qubit").get<QubitIndex>(), j.at("theta").get<double>(),
                  j.at("phi").get<double>());
  }
  if (kind == "RZ") {
    return VzGate{j.at("qubit").get<QubitIndex>(), j.at("angle").get<double>()};
  }
  if (kind == "MCZ") {
    return make_mcz(qubit_list(j.at("qubits")));
  }
  if (kind == "H") return HGate{j.at("qubit").get<QubitIndex>()};
  if (kind == "X") return XGate{j.at("qubit").get<QubitIndex>()};
  if (kind == "CNOT") {
    const auto qs = qubit_list(j.at("qubits"), 2);
    if (qs[0] == qs[1]) throw ParseError("CNOT qubits must differ");
    return CnotGate{qs[0], qs[1]};
  }
  if (kind == "SWAP") {
    const auto qs = qubit_list(j.at("qubits"), 2);
    if (qs[0] == qs[1]) throw ParseError("SWAP qubits must differ");
    return SwapGate{qs[0], qs[1]};
  }
  if (kind == "CCZ") {
    const auto qs = qubit_list(j.at("qubits"), 3);
    auto sorted = qs;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError("CCZ qubits must be distinct");
    }
    return CczGate{qs[0], qs[1], qs[2]};
  }
  throw ParseError("unknown gate kind '" + kind + "'");
}

nlohmann::json circuit_to_json(const Circuit& circuit) {
  nlohmann::json gates = nlohmann::json::array();
  for (const Gate& g : circuit.gates) gates.push_back(gate_to_json(g));
  return {{"n_qubits", circuit.n_qubits},
          {"gates", std::move(gates)},
          {"metadata", circuit.metadata()}};
}

Circuit circuit_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("circuit document must be a JSON object");
  try {
    Circuit c;
    c.n_qubits = doc.at("n_qubits").get<int>();
    if (c.n_qubits < 0) throw ParseError("n_qubits must be non-negative");
    for (const auto& gj : doc.at("gates")) c.gates.push_back(gate_from_json(gj));
    if (doc.contains("metadata")) c.metadata_json = doc.at("metadata").dump();
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
      for (QubitIndex q : gate_qubits(c.gates[i])) {
        if (q < 0 || q >= c.n_qubits) {
          throw ParseError("gate " + std::to_string(i) + ": qubit index " +
                           std::to_string(q) + " out of range");
        }
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("circuit document: ") + e.what());
  }
}

Circuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open circuit file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  try {
    return circuit_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid circuit document in " + path + ": " + e.what());
  }
}

void save_circuit(const Circuit& circuit, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write circuit file: " + path);
  out << circuit_to_json(circuit).dump(2) << "\n";
}

}  // namespace atomsched
