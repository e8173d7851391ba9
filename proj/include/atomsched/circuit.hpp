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

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "atomsched/errors.hpp"

namespace atomsched {

class ConnectivityGraph;

using QubitIndex = int;

/// Physical resonant pulse: rotation by theta about the Bloch-sphere axis
/// (cos phi, sin phi, 0).  theta is kept in (-2pi, 2pi], phi in [0, 2pi).
struct RGate {
  QubitIndex qubit = 0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Phase-frame change by `angle`; diagonal diag(1, e^{i angle}), zero duration.
struct VzGate {
  QubitIndex qubit = 0;
  double angle = 0.0;
};

/// Multi-controlled Z over `qubits` (canonically sorted, unique, size >= 2).
struct MczGate {
  std::vector<QubitIndex> qubits;
};

// Convenience input-only gates, lowered by the transpiler.
struct HGate {
  QubitIndex qubit = 0;
};
struct XGate {
  QubitIndex qubit = 0;
};
struct CnotGate {
  QubitIndex control = 0;
  QubitIndex target = 0;
};
struct SwapGate {
  QubitIndex a = 0;
  QubitIndex b = 0;
};
struct CczGate {
  QubitIndex a = 0;
  QubitIndex b = 0;
  QubitIndex c = 0;
};

using Gate =
    std::variant<RGate, VzGate, MczGate, HGate, XGate, CnotGate, SwapGate, CczGate>;

/// Wraps an angle into [0, 2pi).
double normalize_phi(double phi);
/// Wraps a rotation angle into (-2pi, 2pi] (period 4pi on the spinor).
double normalize_theta(double theta);

/// Canonicalizing factories.  make_mcz sorts, deduplicate-checks and enforces
/// size >= 2; make_r wraps the angles into their canonical windows.
RGate make_r(QubitIndex qubit, double theta, double phi);
MczGate make_mcz(std::vector<QubitIndex> qubits);

std::vector<QubitIndex> gate_qubits(const Gate& gate);
bool gate_touches(const Gate& gate, QubitIndex qubit);
/// True for the gates executable by the device: R, VirtualZ, MCZ.
bool is_native(const Gate& gate);
/// Same gate with every qubit index passed through `map`.
Gate relabel_gate(const Gate& gate, const std::vector<QubitIndex>& map);

struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;
  std::string metadata_json = "{}";  // free-form provenance, stored serialized

  [[nodiscard]] nlohmann::json metadata() const;
  void set_metadata(const nlohmann::json& value);
};

/// One failed practical-form check.  criterion 0 flags structural problems
/// (out-of-range indices and the like); 1-5 match the practical-form criteria:
/// 1 native-only gate set, 2 MCZ connectivity, 3 merged single-qubit runs,
/// 4 no redundant MCZ (first gate per qubit is a pulse), 5 every qubit in
/// at least one MCZ.
struct Violation {
  enum class Site { GateIndex, Qubit };
  int criterion = 0;
  Site site = Site::GateIndex;
  int location = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  [[nodiscard]] bool ok() const { return violations.empty(); }
  [[nodiscard]] bool has_criterion(int criterion) const;
  [[nodiscard]] std::string str() const;
};

/// Raised by operations that require a practical-form circuit.
class ValidationError : public Error {
 public:
  explicit ValidationError(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Checks the practical-form criteria.  Connectivity (criterion 2) is checked
/// only when `graph` is non-null, with circuit qubit i mapped to site i.
ValidationReport validate_practical_form(const Circuit& circuit,
                                         const ConnectivityGraph* graph = nullptr);

// JSON circuit document I/O.  Unknown gate kinds are rejected with ParseError.
nlohmann::json gate_to_json(const Gate& gate);
Gate gate_from_json(const nlohmann::json& j);
nlohmann::json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);
Circuit load_circuit(const std::string& path);
void save_circuit(const Circuit& circuit, const std::string& path);

}  // namespace atomsched
