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

#include <doctest.h>

#include <complex>
#include <numbers>

#include "atomsched/circuit.hpp"
#include "atomsched/unitary.hpp"
#include "helpers.hpp"

using namespace atomsched;
namespace ts = atomsched::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Circuit single_gate(int n, Gate g) {
  Circuit c;
  c.n_qubits = n;
  c.gates.push_back(std::move(g));
  return c;
}

}  // namespace

TEST_CASE("rotation gates match the matrix-exponential oracle") {
  for (const double theta : {0.3, kPi / 2, kPi, 2.1, -1.7}) {
    for (const double phi : {0.0, 0.9, kPi, 5.5}) {
      const Eigen::MatrixXcd lib = circuit_unitary(single_gate(1, make_r(0, theta, phi)));
      const Eigen::Matrix2cd oracle =
          ts::r_matrix_by_exponential(normalize_theta(theta), normalize_phi(phi));
      CHECK(ts::matrices_close(lib, oracle, 1e-12));
    }
  }
}

TEST_CASE("frame changes are the expected diagonal") {
  const Eigen::MatrixXcd lib = circuit_unitary(single_gate(1, Gate{VzGate{0, 1.3}}));
  CHECK(ts::matrices_close(lib, ts::vz_matrix(1.3), 1e-15));
}

TEST_CASE("multi-controlled Z flips exactly the all-ones component") {
  const Eigen::MatrixXcd cz = circuit_unitary(single_gate(2, make_mcz({0, 1})));
  CHECK(ts::matrices_close(cz, ts::phase_on_all_ones(2, {0, 1}), 1e-15));
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(4, 4);
  expected(3, 3) = -1.0;
  CHECK(ts::matrices_close(cz, expected, 1e-15));

  const Eigen::MatrixXcd ccz = circuit_unitary(single_gate(3, make_mcz({0, 1, 2})));
  CHECK(ts::matrices_close(ccz, ts::phase_on_all_ones(3, {0, 1, 2}), 1e-15));
  CHECK(ccz(7, 7) == std::complex<double>(-1.0, 0.0));

  const Eigen::MatrixXcd partial = circuit_unitary(single_gate(3, make_mcz({0, 2})));
  CHECK(ts::matrices_close(partial, ts::phase_on_all_ones(3, {0, 2}), 1e-15));
}

TEST_CASE("qubit 0 is the least significant basis bit") {
  // X-like rotation on qubit 1 of 2 must swap basis pairs {0,2} and {1,3}.
  const Eigen::MatrixXcd u = circuit_unitary(single_gate(2, make_r(1, kPi, 0.0)));
  CHECK(std::abs(u(2, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(u(3, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(u(0, 0)) == doctest::Approx(0.0));
}

TEST_CASE("circuit unitary composes gates in circuit order") {
  Circuit c;
  c.n_qubits = 2;
  c.gates = {make_r(0, 0.8, 0.2), make_mcz({0, 1}), make_r(1, 1.1, 4.0), Gate{VzGate{0, 0.6}}};
  Eigen::MatrixXcd oracle = Eigen::MatrixXcd::Identity(4, 4);
  oracle = ts::embed_1q(ts::r_matrix_by_exponential(0.8, 0.2), 0, 2) * oracle;
  oracle = ts::phase_on_all_ones(2, {0, 1}) * oracle;
  oracle = ts::embed_1q(ts::r_matrix_by_exponential(1.1, 4.0), 1, 2) * oracle;
  oracle = ts::embed_1q(ts::vz_matrix(0.6), 0, 2) * oracle;
  CHECK(ts::matrices_close(circuit_unitary(c), oracle, 1e-12));
}

TEST_CASE("convenience gates carry their textbook matrices") {
  Eigen::MatrixXcd h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CHECK(equal_up_to_global_phase(circuit_unitary(single_gate(1, Gate{HGate{0}})), h));

  Eigen::MatrixXcd x(2, 2);
  x << 0, 1, 1, 0;
  CHECK(equal_up_to_global_phase(circuit_unitary(single_gate(1, Gate{XGate{0}})), x));

  Eigen::MatrixXcd cnot = Eigen::MatrixXcd::Zero(4, 4);
  // control q0, target q1, LSB-first indices: 00->00, 01->11, 10->10, 11->01.
  cnot(0, 0) = 1;
  cnot(3, 1) = 1;
  cnot(2, 2) = 1;
  cnot(1, 3) = 1;
  CHECK(ts::matrices_close(circuit_unitary(single_gate(2, Gate{CnotGate{0, 1}})), cnot, 1e-12));

  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
  swap(0, 0) = 1;
  swap(2, 1) = 1;
  swap(1, 2) = 1;
  swap(3, 3) = 1;
  CHECK(ts::matrices_close(circuit_unitary(single_gate(2, Gate{SwapGate{0, 1}})), swap, 1e-12));

  CHECK(ts::matrices_close(circuit_unitary(single_gate(3, Gate{CczGate{2, 0, 1}})),
                           ts::phase_on_all_ones(3, {0, 1, 2}), 1e-12));
}

TEST_CASE("apply_gate_left agrees with the full product") {
  const Circuit c = ts::absorption_showcase_circuit();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(16, 16);
  for (const Gate& g : c.gates) apply_gate_left(u, g);
  CHECK(ts::matrices_close(u, circuit_unitary(c), 1e-12));
}

TEST_CASE("global-phase comparison tolerates exactly a unit scalar") {
  const Eigen::MatrixXcd u = circuit_unitary(single_gate(1, make_r(0, 1.0, 0.5)));
  const std::complex<double> gamma = std::exp(ts::kI * 2.2);
  CHECK(equal_up_to_global_phase(u, gamma * u));
  CHECK(equal_up_to_global_phase(u, u));
  CHECK_FALSE(equal_up_to_global_phase(u, 1.5 * u));
  Eigen::MatrixXcd v = u;
  v(0, 0) += 1e-3;
  CHECK_FALSE(equal_up_to_global_phase(u, v));
  CHECK_FALSE(equal_up_to_global_phase(u, Eigen::MatrixXcd::Identity(4, 4)));
}

TEST_CASE("unitary construction is capped at ten qubits") {
  Circuit c;
  c.n_qubits = 11;
  c.gates = {make_r(0, 1.0, 0.0)};
  CHECK_THROWS_AS(circuit_unitary(c), Error);
}
