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

// Oracles and fixtures shared across test suites.  The matrix oracles here
// are built by independent routes (matrix exponentials, explicit basis-index
// loops) rather than through the library's own gate constructors, so that a
// test failure points at the library and not at a shared mistake.

#pragma once

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "atomsched/circuit.hpp"

namespace atomsched::testing {

inline constexpr std::complex<double> kI{0.0, 1.0};

/// R(theta, phi) built as exp(-i theta/2 (cos phi X + sin phi Y)); the
/// exponential is evaluated numerically by Eigen, not from a closed form.
inline Eigen::Matrix2cd r_matrix_by_exponential(double theta, double phi) {
  Eigen::Matrix2cd axis;
  axis << 0.0, std::exp(-kI * phi), std::exp(kI * phi), 0.0;
  return (-kI * (theta / 2.0) * axis).exp();
}

inline Eigen::Matrix2cd vz_matrix(double angle) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  m(1, 1) = std::exp(kI * angle);
  return m;
}

/// Embeds a one-qubit operator at `qubit` of an n-qubit register, with qubit
/// 0 as the least significant basis bit.
inline Eigen::MatrixXcd embed_1q(const Eigen::Matrix2cd& op, int qubit, int n) {
  const long dim = 1L << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (long col = 0; col < dim; ++col) {
    const int bit = static_cast<int>((col >> qubit) & 1);
    for (int to = 0; to < 2; ++to) {
      const long row = (col & ~(1L << qubit)) | (static_cast<long>(to) << qubit);
      out(row, col) = op(to, bit);
    }
  }
  return out;
}

/// Diagonal operator that flips the sign of every basis state whose bits are
/// all 1 on `members`: the multi-controlled-Z oracle.
inline Eigen::MatrixXcd phase_on_all_ones(int n, const std::vector<int>& members) {
  const long dim = 1L << n;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(dim, dim);
  for (long i = 0; i < dim; ++i) {
    bool all = true;
    for (int q : members) all = all && (((i >> q) & 1) != 0);
    if (all) out(i, i) = -1.0;
  }
  return out;
}

inline bool matrices_close(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                           double tol = 1e-12) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

/// Four-qubit fixture: one CCZ sandwiched by full single-qubit layers, plus a
/// spectator qubit whose gate can run during the block.  Under unit timing
/// the pulse-level schedule takes 14 ticks and the gate-level one 22.
inline Circuit absorption_showcase_circuit() {
  Circuit c;
  c.n_qubits = 4;
  c.gates = {
      make_r(0, 1.5707963267948966, 0.0), make_r(1, 1.5707963267948966, 0.5),
      make_r(2, 1.5707963267948966, 1.0), make_r(3, 1.5707963267948966, 1.5),
      make_mcz({0, 1, 2}),
      make_r(0, 2.0, 2.0),                make_r(1, 2.0, 2.5),
      make_r(2, 2.0, 3.0),
  };
  return c;
}

/// Two-qubit circuit of `layers` CZ gates, a fresh rotation on both qubits
/// before each and after the last.  Pulse-level duration is 7L+2 ticks under
/// unit timing; gate-level is 10L+4.
inline Circuit cz_chain(int layers) {
  Circuit c;
  c.n_qubits = 2;
  c.gates.push_back(make_r(0, 1.2, 0.0));
  c.gates.push_back(make_r(1, 1.2, 0.3));
  for (int k = 0; k < layers; ++k) {
    c.gates.push_back(make_mcz({0, 1}));
    c.gates.push_back(make_r(0, 0.9 + 0.1 * k, 0.2 + 0.05 * k));
    c.gates.push_back(make_r(1, 0.9 + 0.1 * k, 0.4 + 0.05 * k));
  }
  return c;
}

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    const auto base = std::filesystem::temp_directory_path();
    do {
      path_ = base / ("atomsched-test-" + std::to_string(++counter) + "-" +
                      std::to_string(static_cast<long>(::getpid())));
    } while (std::filesystem::exists(path_));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace atomsched::testing
