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
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "atomsched/circuit.hpp"
#include "atomsched/device.hpp"
#include "atomsched/ticks.hpp"

namespace atomsched {

enum class Channel { Rydberg, Raman };

struct PiRole {};
struct TwoPiRole {};
struct RamanRole {
  double theta = 0.0;
  double phi = 0.0;
};
using PulseRole = std::variant<PiRole, TwoPiRole, RamanRole>;

/// Redirects the channel to address `to`; takes delta_t, acts on no qubit.
struct Retarget {
  QubitIndex to = 0;
  Ticks duration{0};
};

/// Drives the channel's currently addressed qubit for `duration`.
struct Pulse {
  QubitIndex target = 0;
  Ticks duration{0};
  PulseRole role;
};

struct Instruction {
  Channel channel = Channel::Rydberg;
  std::variant<Retarget, Pulse> kind;
  Ticks t_start{0};
  std::optional<int> block_id;

  [[nodiscard]] bool is_pulse() const { return std::holds_alternative<Pulse>(kind); }
  [[nodiscard]] const Pulse& pulse() const { return std::get<Pulse>(kind); }
  /// Pulse target, or retarget destination.
  [[nodiscard]] QubitIndex target() const;
  [[nodiscard]] Ticks dur() const;
  [[nodiscard]] Ticks t_end() const { return t_start + dur(); }

  friend bool operator==(const Instruction&, const Instruction&);
};

struct PulseSequence {
  int n_qubits = 0;
  TimingParams timing;
  std::vector<Instruction> rydberg;
  std::vector<Instruction> raman;

  friend bool operator==(const PulseSequence&, const PulseSequence&);
};

/// A qubit's participation interval in one MCZ block: first own pulse start
/// to last own pulse end; for the 2pi recipient just the 2pi pulse itself.
struct InvolvementWindow {
  int block_id = 0;
  QubitIndex qubit = 0;
  Ticks start{0};
  Ticks end{0};
};

/// One reconstructed MCZ block from the Rydberg channel.
struct BlockInfo {
  int id = 0;
  std::vector<QubitIndex> targets;                  // train order, length 2N-1
  std::vector<std::pair<Ticks, Ticks>> intervals;   // per train pulse
  std::set<QubitIndex> members;
  QubitIndex border = 0;
  QubitIndex two_pi = 0;
  Ticks first_start{0};  // first pulse start (leading retarget excluded)
  Ticks last_end{0};
};

/// The protocol's pulse train: border, the other non-2pi members in `qubits`
/// order, the 2pi pulse, then the mirror.  2N-1 entries, palindromic targets.
std::vector<std::pair<QubitIndex, PulseRole>> mcz_pulse_train(
    const std::vector<QubitIndex>& qubits, QubitIndex border, QubitIndex two_pi_recipient);

/// Latest instruction end over both channels; 0 for an empty sequence.
Ticks duration(const PulseSequence& seq);

/// 2n*delta_pi + (2n-2)*delta_t: the train's pulses plus internal retargets,
/// excluding the leading retarget (charged to the gap before the block).
Ticks mcz_block_duration(int n, const TimingParams& timing);

/// Groups Rydberg pulses by block tag and validates train structure; throws
/// Error on malformed blocks.  Returned in order of first pulse.
std::vector<BlockInfo> extract_blocks(const PulseSequence& seq);

std::vector<InvolvementWindow> involvement_windows(const PulseSequence& seq);

struct WellformedIssue {
  char clause = '?';  // 'a'..'f', or 'g' for the gate-level busy rule
  std::string message;
};

struct WellformedReport {
  std::vector<WellformedIssue> issues;
  [[nodiscard]] bool ok() const { return issues.empty(); }
  [[nodiscard]] bool has_clause(char clause) const;
  [[nodiscard]] std::string str() const;
};

/// Physical-constraint audit of a sequence against its source circuit:
///   (a) per-channel non-overlap and t_start order;
///   (b) retargeting discipline and structural role/duration rules;
///   (c) MCZ trains contiguous and palindromic on the Rydberg channel;
///   (d) no Raman pulse inside its own qubit's involvement windows;
///   (e) per-qubit realized intervals follow circuit order without overlap;
///   (f) every circuit gate realized exactly once (blocks biject to MCZs).
WellformedReport check_wellformed(const PulseSequence& seq, const Circuit& circuit);

/// The stricter baseline rule: every member of an MCZ is busy for the whole
/// train (issues tagged 'g').
WellformedReport check_gate_level_busy(const PulseSequence& seq);

nlohmann::json sequence_to_json(const PulseSequence& seq);
PulseSequence sequence_from_json(const nlohmann::json& doc);
PulseSequence load_sequence(const std::string& path);
void save_sequence(const PulseSequence& seq, const std::string& path);

}  // namespace atomsched
