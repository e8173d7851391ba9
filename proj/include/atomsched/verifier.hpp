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
#include <complex>
#include <vector>

#include "atomsched/circuit.hpp"
#include "atomsched/sequence.hpp"

namespace atomsched {

/// Three-level simulation: each atom is |0>, |1>, or the auxiliary |r>.
/// States are dense vectors of dimension 3^n with atom 0 as the least
/// significant base-3 digit.

long qutrit_dim(int n_qubits);

/// In-place R(theta, phi) on the {|0>,|1>} subspace of `target`; |r> amplitudes
/// are untouched.
void apply_raman_pulse(Eigen::VectorXcd& state, int n_qubits, QubitIndex target,
                       double theta, double phi);

/// In-place addressed pulse on the {|0>,|r>} subspace of `target`.  Basis
/// components where any `context` atom sits in |r> are blocked and left
/// unchanged.  A pi pulse maps |0> -> -i|r>, |r> -> -i|0>; a 2pi pulse maps
/// |0> -> -|0>, |r> -> -|r>.  |1> never moves.
void apply_rydberg_pulse(Eigen::VectorXcd& state, int n_qubits, QubitIndex target,
                         bool two_pi, const std::vector<QubitIndex>& context);

/// The full 3^n operator realized by the sequence: pulses applied in t_start
/// order (Rydberg first on ties), retargets skipped, each Rydberg pulse
/// blockade-checked against its block's other members.  Throws Error when
/// n_qubits > 7 or the Rydberg channel has malformed blocks.
Eigen::MatrixXcd sequence_operator(const PulseSequence& seq);

struct EquivalenceResult {
  bool equivalent = false;
  double leakage = 0.0;            // worst per-column norm outside {|0>,|1>}^n
  std::complex<double> phase{1.0}; // global phase relating sequence to circuit
};

/// Simulates every computational basis state through the sequence and
/// compares the restricted operator with the circuit unitary up to a global
/// phase (tolerance 1e-7, leakage bound 1e-7).  The sequence must pass
/// check_wellformed against the circuit first; otherwise this throws Error.
EquivalenceResult check_equivalence(const Circuit& circuit, const PulseSequence& seq);

}  // namespace atomsched
