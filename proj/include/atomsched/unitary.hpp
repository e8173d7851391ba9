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

#include <Eigen/Dense>

#include "atomsched/circuit.hpp"

namespace atomsched {

/// Dense 2^n x 2^n product of the circuit's gate matrices, in circuit order.
/// Qubit 0 is the least significant bit of the basis index.  Capped at
/// n_qubits <= 10.
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

/// Applies one gate in place: u <- G u.  Exposed for incremental oracles.
void apply_gate_left(Eigen::MatrixXcd& u, const Gate& gate);

/// True when a = e^{i gamma} b for some gamma, within elementwise tolerance.
bool equal_up_to_global_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                              double tol = 1e-7);

}  // namespace atomsched
