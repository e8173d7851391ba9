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

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "atomsched/circuit.hpp"

namespace atomsched {

inline constexpr double kIdentityThreshold = 1e-9;

/// R(theta, phi) = exp(-i theta/2 (cos(phi) X + sin(phi) Y)).
inline Eigen::Matrix2cd r_matrix(double theta, double phi) {
  using namespace std::complex_literals;
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  Eigen::Matrix2cd m;
  m << c, -1i * std::exp(-1i * phi) * s, -1i * std::exp(1i * phi) * s, c;
  return m;
}

/// VirtualZ(alpha) = diag(1, e^{i alpha}).
inline Eigen::Matrix2cd vz_matrix(double alpha) {
  using namespace std::complex_literals;
  Eigen::Matrix2cd m;
  m << 1.0, 0.0, 0.0, std::exp(1i * alpha);
  return m;
}

inline Eigen::Matrix2cd h_matrix() {
  Eigen::Matrix2cd m;
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

inline Eigen::Matrix2cd x_matrix() {
  Eigen::Matrix2cd m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

/// Matrix of any single-qubit gate variant; throws on multi-qubit gates.
Eigen::Matrix2cd gate_matrix_1q(const Gate& gate);

/// Frobenius distance from the nearest phase multiple of the identity.
/// For unitary U this is sqrt(4 - 2|tr U|).
inline double distance_to_identity(const Eigen::Matrix2cd& u) {
  const double t = std::abs(u.trace());
  return std::sqrt(std::max(0.0, u.squaredNorm() + 2.0 - 2.0 * t));
}

inline bool is_identity_up_to_phase(const Eigen::Matrix2cd& u,
                                    double tol = kIdentityThreshold) {
  return distance_to_identity(u) < tol;
}

/// U = e^{i delta} * VZ(lambda) * R(theta, phi) (matrix product; the circuit
/// plays R first, then the virtual Z).  Pure rotations omit the Z factor and
/// diagonal gates omit the R factor; identity yields neither.
struct OneQubitDecomposition {
  std::optional<RGate> r;
  std::optional<VzGate> vz;
};

OneQubitDecomposition decompose_1q(const Eigen::Matrix2cd& u, QubitIndex qubit);

}  // namespace atomsched
