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

#include <string>

#include "atomsched/sequence.hpp"

namespace atomsched {

/// Deterministic SVG timeline: Rydberg lane on top, Raman lane below, pulses
/// as labeled solid rectangles (width proportional to duration, so a 2pi
/// pulse is twice a pi pulse), retargets as dashed outlines, block spans
/// shaded behind the lanes, and a tick axis along the bottom.
std::string render_svg(const PulseSequence& seq);

/// render_svg written to `path`; throws Error on I/O failure.
void render_timeline(const PulseSequence& seq, const std::string& path);

}  // namespace atomsched
