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

#include "atomsched/render.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "atomsched/errors.hpp"

namespace atomsched {

namespace {

constexpr double kScale = 48.0;   // px per tick
constexpr double kMarginX = 70.0; // room for lane labels
constexpr double kLaneY[2] = {32.0, 120.0};
constexpr double kLaneH = 48.0;
constexpr double kAxisY = 196.0;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double to_x(const Ticks& t) { return kMarginX + t.to_double() * kScale; }

const char* pulse_fill(const Instruction& ins) {
  if (ins.channel == Channel::Raman) return "#f2a65a";
  return std::holds_alternative<TwoPiRole>(ins.pulse().role) ? "#2c5fc4" : "#6d96e8";
}

std::string pulse_label(const Instruction& ins) {
  std::ostringstream os;
  if (const auto* raman = std::get_if<RamanRole>(&ins.pulse().role)) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "R(%.2f,%.2f)", raman->theta, raman->phi);
    os << buf;
  } else if (std::holds_alternative<TwoPiRole>(ins.pulse().role)) {
    os << "2pi";
  } else {
    os << "pi";
  }
  return os.str();
}

void draw_lane(std::ostringstream& svg, const std::vector<Instruction>& channel,
               const char* id, double lane_y) {
  svg << "<g id=\"" << id << "\">\n";
  for (const Instruction& ins : channel) {
    const double x = to_x(ins.t_start);
    const double w = ins.dur().to_double() * kScale;
    if (ins.is_pulse()) {
      svg << "<rect class=\"pulse\" x=\"" << num(x) << "\" y=\"" << num(lane_y)
          << "\" width=\"" << num(w) << "\" height=\"" << num(kLaneH) << "\" fill=\""
          << pulse_fill(ins) << "\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(lane_y + 18)
          << "\" text-anchor=\"middle\" font-size=\"10\">q" << ins.target() << "</text>\n";
      svg << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(lane_y + 34)
          << "\" text-anchor=\"middle\" font-size=\"9\">" << pulse_label(ins) << "</text>\n";
    } else {
      svg << "<rect class=\"retarget\" x=\"" << num(x) << "\" y=\"" << num(lane_y)
          << "\" width=\"" << num(w) << "\" height=\"" << num(kLaneH)
          << "\" fill=\"none\" stroke=\"#777\" stroke-dasharray=\"4 3\"/>\n";
      svg << "<text x=\"" << num(x + w / 2) << "\" y=\"" << num(lane_y + kLaneH / 2 + 3)
          << "\" text-anchor=\"middle\" font-size=\"9\" fill=\"#777\">&#8594;q"
          << ins.target() << "</text>\n";
    }
  }
  svg << "</g>\n";
}

}  // namespace

std::string render_svg(const PulseSequence& seq) {
  const Ticks total = duration(seq);
  const double width = kMarginX + std::max(1.0, total.to_double()) * kScale + 40.0;
  const double height = kAxisY + 40.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
      << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
      << num(height) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Shaded spans behind everything, one per reconstructible block.
  svg << "<g id=\"blocks\">\n";
  try {
    for (const BlockInfo& block : extract_blocks(seq)) {
      const double x = to_x(block.first_start);
      const double w = (block.last_end - block.first_start).to_double() * kScale;
      svg << "<rect class=\"block\" x=\"" << num(x) << "\" y=\"" << num(kLaneY[0] - 8)
          << "\" width=\"" << num(w) << "\" height=\""
          << num(kLaneY[1] + kLaneH - kLaneY[0] + 16) << "\" fill=\"#dce6f7\" opacity=\"0.5\"/>\n";
    }
  } catch (const Error&) {
    // Malformed or untagged blocks: draw lanes without shading.
  }
  svg << "</g>\n";

  svg << "<text x=\"8\" y=\"" << num(kLaneY[0] + kLaneH / 2 + 4)
      << "\" font-size=\"12\">Rydberg</text>\n";
  svg << "<text x=\"8\" y=\"" << num(kLaneY[1] + kLaneH / 2 + 4)
      << "\" font-size=\"12\">Raman</text>\n";
  draw_lane(svg, seq.rydberg, "rydberg-lane", kLaneY[0]);
  draw_lane(svg, seq.raman, "raman-lane", kLaneY[1]);

  // Time axis in ticks; step up for long schedules to keep labels readable.
  svg << "<g id=\"axis\" font-size=\"10\">\n";
  svg << "<line x1=\"" << num(kMarginX) << "\" y1=\"" << num(kAxisY) << "\" x2=\""
      << num(to_x(total)) << "\" y2=\"" << num(kAxisY) << "\" stroke=\"black\"/>\n";
  const double span = total.to_double();
  long step = 1;
  while (span / static_cast<double>(step) > 40.0) step *= 2;
  for (long tick = 0; static_cast<double>(tick) <= span + 1e-9; tick += step) {
    const double x = kMarginX + static_cast<double>(tick) * kScale;
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kAxisY) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(kAxisY + 6) << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(kAxisY + 18)
        << "\" text-anchor=\"middle\">" << tick << "</text>\n";
  }
  svg << "</g>\n";
  svg << "</svg>\n";
  return svg.str();
}

void render_timeline(const PulseSequence& seq, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << render_svg(seq);
  if (!out) throw Error("write failed: " + path);
}

}  // namespace atomsched
