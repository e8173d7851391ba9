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

#include "atomsched/unitary.hpp"

#include <complex>

#include "atomsched/errors.hpp"
#include "atomsched/su2.hpp"

namespace atomsched {

namespace {

// u <- (single-qubit m on wire q) u, by combining row pairs.
void apply_1q_left(Eigen::MatrixXcd& u, QubitIndex q, const Eigen::Matrix2cd& m) {
  const Eigen::Index dim = u.rows();
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index i0 = 0; i0 < dim; ++i0) {
    if (i0 & bit) continue;
    const Eigen::Index i1 = i0 | bit;
    const Eigen::RowVectorXcd top = m(0, 0) * u.row(i0) + m(0, 1) * u.row(i1);
    u.row(i1) = m(1, 0) * u.row(i0) + m(1, 1) * u.row(i1);
    u.row(i0) = top;
  }
}

void swap_rows_where(Eigen::MatrixXcd& u, QubitIndex a, QubitIndex b) {
  const Eigen::Index dim = u.rows();
  const Eigen::Index bit_a = Eigen::Index{1} << a;
  const Eigen::Index bit_b = Eigen::Index{1} << b;
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & bit_a) && !(i & bit_b)) u.row(i).swap(u.row((i & ~bit_a) | bit_b));
  }
}

}  // namespace

void apply_gate_left(Eigen::MatrixXcd& u, const Gate& gate) {
  const Eigen::Index dim = u.rows();
  if (const auto* mcz = std::get_if<MczGate>(&gate)) {
    Eigen::Index mask = 0;
    for (QubitIndex q : mcz->qubits) mask |= Eigen::Index{1} << q;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((i & mask) == mask) u.row(i) = -u.row(i);
    }
  } else if (const auto* ccz = std::get_if<CczGate>(&gate)) {
    const Eigen::Index mask = (Eigen::Index{1} << ccz->a) | (Eigen::Index{1} << ccz->b) |
                              (Eigen::Index{1} << ccz->c);
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((i & mask) == mask) u.row(i) = -u.row(i);
    }
  } else if (const auto* cx = std::get_if<CnotGate>(&gate)) {
    const Eigen::Index cbit = Eigen::Index{1} << cx->control;
    const Eigen::Index tbit = Eigen::Index{1} << cx->target;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((i & cbit) && !(i & tbit)) u.row(i).swap(u.row(i | tbit));
    }
  } else if (const auto* sw = std::get_if<SwapGate>(&gate)) {
    swap_rows_where(u, sw->a, sw->b);
  } else {
    apply_1q_left(u, gate_qubits(gate)[0], gate_matrix_1q(gate));
  }
}

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
  if (circuit.n_qubits < 0 || circuit.n_qubits > 10) {
    throw Error("circuit_unitary: supports up to 10 qubits");
  }
  const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Gate& gate : circuit.gates) apply_gate_left(u, gate);
  return u;
}

bool equal_up_to_global_phase(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                              double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // Fix the phase on the largest entry of b, then compare elementwise.
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) < tol) return (a.cwiseAbs().maxCoeff() < tol);
  const std::complex<double> phase = a(r, c) / b(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  return ((a - phase * b).cwiseAbs().maxCoeff() <= tol);
}

}  // namespace atomsched
