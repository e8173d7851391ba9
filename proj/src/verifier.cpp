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

#include "atomsched/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "atomsched/errors.hpp"
#include "atomsched/unitary.hpp"

namespace atomsched {

namespace {

constexpr int kMaxQutritQubits = 7;
constexpr std::complex<double> kMinusI{0.0, -1.0};

long pow3(int n) {
  long d = 1;
  for (int i = 0; i < n; ++i) d *= 3;
  return d;
}

int digit(long index, long place3) { return static_cast<int>((index / place3) % 3); }

struct SimPulse {
  Ticks t_start{0};
  int channel_rank = 0;  // Rydberg 0, Raman 1: blocks act before overlapping 1q starts
  std::size_t seq_index = 0;
  QubitIndex target = 0;
  bool rydberg = false;
  bool two_pi = false;
  double theta = 0.0;
  double phi = 0.0;
  std::vector<QubitIndex> context;
};

std::vector<SimPulse> ordered_pulses(const PulseSequence& seq) {
  std::map<int, std::vector<QubitIndex>> members;
  for (const BlockInfo& b : extract_blocks(seq)) {
    members[b.id] = std::vector<QubitIndex>(b.members.begin(), b.members.end());
  }
  std::vector<SimPulse> pulses;
  for (std::size_t i = 0; i < seq.rydberg.size(); ++i) {
    const Instruction& ins = seq.rydberg[i];
    if (!ins.is_pulse()) continue;
    SimPulse p;
    p.t_start = ins.t_start;
    p.channel_rank = 0;
    p.seq_index = i;
    p.target = ins.target();
    p.rydberg = true;
    p.two_pi = std::holds_alternative<TwoPiRole>(ins.pulse().role);
    if (!ins.block_id) throw Error("sequence_operator: untagged rydberg pulse");
    for (QubitIndex q : members.at(*ins.block_id)) {
      if (q != p.target) p.context.push_back(q);
    }
    pulses.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < seq.raman.size(); ++i) {
    const Instruction& ins = seq.raman[i];
    if (!ins.is_pulse()) continue;
    const auto* role = std::get_if<RamanRole>(&ins.pulse().role);
    if (role == nullptr) throw Error("sequence_operator: raman pulse without angles");
    SimPulse p;
    p.t_start = ins.t_start;
    p.channel_rank = 1;
    p.seq_index = i;
    p.target = ins.target();
    p.theta = role->theta;
    p.phi = role->phi;
    pulses.push_back(std::move(p));
  }
  std::sort(pulses.begin(), pulses.end(), [](const SimPulse& a, const SimPulse& b) {
    if (a.t_start != b.t_start) return a.t_start < b.t_start;
    if (a.channel_rank != b.channel_rank) return a.channel_rank < b.channel_rank;
    return a.seq_index < b.seq_index;
  });
  return pulses;
}

void apply_sim_pulse(Eigen::VectorXcd& state, int n, const SimPulse& p) {
  if (p.rydberg) {
    apply_rydberg_pulse(state, n, p.target, p.two_pi, p.context);
  } else {
    apply_raman_pulse(state, n, p.target, p.theta, p.phi);
  }
}

}  // namespace

long qutrit_dim(int n_qubits) { return pow3(n_qubits); }

void apply_raman_pulse(Eigen::VectorXcd& state, int n_qubits, QubitIndex target,
                       double theta, double phi) {
  const long dim = pow3(n_qubits);
  const long place = pow3(static_cast<int>(target));
  const std::complex<double> c{std::cos(theta / 2.0), 0.0};
  const std::complex<double> s01 = kMinusI * std::exp(std::complex<double>(0.0, -phi)) *
                                   std::sin(theta / 2.0);
  const std::complex<double> s10 = kMinusI * std::exp(std::complex<double>(0.0, phi)) *
                                   std::sin(theta / 2.0);
  for (long i = 0; i < dim; ++i) {
    if (digit(i, place) != 0) continue;
    const long j = i + place;  // same digits with target raised to |1>
    const std::complex<double> a0 = state[i];
    const std::complex<double> a1 = state[j];
    state[i] = c * a0 + s01 * a1;
    state[j] = s10 * a0 + c * a1;
  }
}

void apply_rydberg_pulse(Eigen::VectorXcd& state, int n_qubits, QubitIndex target,
                         bool two_pi, const std::vector<QubitIndex>& context) {
  const long dim = pow3(n_qubits);
  const long place = pow3(static_cast<int>(target));
  std::vector<long> context_places;
  context_places.reserve(context.size());
  for (QubitIndex q : context) context_places.push_back(pow3(static_cast<int>(q)));
  auto blocked = [&](long i) {
    for (long cp : context_places) {
      if (digit(i, cp) == 2) return true;
    }
    return false;
  };
  if (two_pi) {
    for (long i = 0; i < dim; ++i) {
      const int d = digit(i, place);
      if (d == 1 || blocked(i)) continue;
      state[i] = -state[i];
    }
  } else {
    for (long i = 0; i < dim; ++i) {
      if (digit(i, place) != 0 || blocked(i)) continue;
      const long j = i + 2 * place;  // target raised to |r>
      const std::complex<double> a0 = state[i];
      const std::complex<double> ar = state[j];
      state[i] = kMinusI * ar;
      state[j] = kMinusI * a0;
    }
  }
}

Eigen::MatrixXcd sequence_operator(const PulseSequence& seq) {
  if (seq.n_qubits > kMaxQutritQubits) {
    std::ostringstream os;
    os << "sequence_operator: " << seq.n_qubits << " qubits exceeds the 3^n simulation limit of "
       << kMaxQutritQubits;
    throw Error(os.str());
  }
  const int n = seq.n_qubits;
  const long dim = pow3(n);
  const std::vector<SimPulse> pulses = ordered_pulses(seq);
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::VectorXcd col(dim);
  for (long c = 0; c < dim; ++c) {
    col = op.col(c);
    for (const SimPulse& p : pulses) apply_sim_pulse(col, n, p);
    op.col(c) = col;
  }
  return op;
}

EquivalenceResult check_equivalence(const Circuit& circuit, const PulseSequence& seq) {
  const WellformedReport wf = check_wellformed(seq, circuit);
  if (!wf.ok()) {
    throw Error("check_equivalence: sequence is not well-formed\n" + wf.str());
  }
  const int n = circuit.n_qubits;
  if (n > kMaxQutritQubits) {
    std::ostringstream os;
    os << "check_equivalence: " << n << " qubits exceeds the 3^n simulation limit of "
       << kMaxQutritQubits;
    throw Error(os.str());
  }

  const std::vector<SimPulse> pulses = ordered_pulses(seq);
  const long comp_dim = 1L << n;

  // Base-3 index of each computational basis state (digits restricted to 0/1).
  std::vector<long> comp_index(static_cast<std::size_t>(comp_dim));
  for (long c = 0; c < comp_dim; ++c) {
    long idx = 0;
    long place = 1;
    for (int k = 0; k < n; ++k) {
      if ((c >> k) & 1) idx += place;
      place *= 3;
    }
    comp_index[static_cast<std::size_t>(c)] = idx;
  }

  EquivalenceResult result;
  Eigen::MatrixXcd restricted(comp_dim, comp_dim);
  Eigen::VectorXcd state(pow3(n));
  for (long c = 0; c < comp_dim; ++c) {
    state.setZero();
    state[comp_index[static_cast<std::size_t>(c)]] = 1.0;
    for (const SimPulse& p : pulses) apply_sim_pulse(state, n, p);
    double kept = 0.0;
    for (long r = 0; r < comp_dim; ++r) {
      const std::complex<double> amp = state[comp_index[static_cast<std::size_t>(r)]];
      restricted(r, c) = amp;
      kept += std::norm(amp);
    }
    const double leaked = std::sqrt(std::max(0.0, state.squaredNorm() - kept));
    result.leakage = std::max(result.leakage, leaked);
  }

  const Eigen::MatrixXcd expected = circuit_unitary(circuit);
  long bi = 0;
  long bj = 0;
  expected.cwiseAbs().maxCoeff(&bi, &bj);
  result.phase = restricted(bi, bj) / expected(bi, bj);
  constexpr double kTol = 1e-7;
  bool close = std::abs(std::abs(result.phase) - 1.0) <= kTol;
  if (close) {
    const std::complex<double> phase = result.phase / std::abs(result.phase);
    close = ((restricted - phase * expected).cwiseAbs().maxCoeff() <= kTol);
  }
  result.equivalent = close && result.leakage < kTol;
  return result;
}

}  // namespace atomsched
