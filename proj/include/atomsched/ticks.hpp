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

#include <cstdint>
#include <iosfwd>
#include <string>

namespace atomsched {

/// Exact rational number of schedule ticks.  All instruction start times and
/// durations are rationals so that schedules compare exactly; no floating
/// point ever enters the timing arithmetic.  Always stored normalized:
/// denominator positive, gcd(|num|, den) == 1.
class Ticks {
 public:
  constexpr Ticks() = default;
  constexpr Ticks(std::int64_t integer) : num_(integer) {}  // NOLINT: implicit by design
  Ticks(std::int64_t numerator, std::int64_t denominator);

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] std::int64_t den() const { return den_; }

  /// Serialized canonical form "p/q", e.g. "3/2", "-1/1", "0/1".
  [[nodiscard]] std::string str() const;
  /// Parses "p/q" or a bare integer "p".  Throws ParseError on anything else.
  static Ticks parse(const std::string& text);

  [[nodiscard]] double to_double() const;

  Ticks operator-() const;
  Ticks& operator+=(const Ticks& rhs);
  Ticks& operator-=(const Ticks& rhs);
  Ticks& operator*=(const Ticks& rhs);
  Ticks& operator/=(const Ticks& rhs);

  friend Ticks operator+(Ticks lhs, const Ticks& rhs) { return lhs += rhs; }
  friend Ticks operator-(Ticks lhs, const Ticks& rhs) { return lhs -= rhs; }
  friend Ticks operator*(Ticks lhs, const Ticks& rhs) { return lhs *= rhs; }
  friend Ticks operator/(Ticks lhs, const Ticks& rhs) { return lhs /= rhs; }

  friend bool operator==(const Ticks& a, const Ticks& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Ticks& a, const Ticks& b) { return !(a == b); }
  friend bool operator<(const Ticks& a, const Ticks& b);
  friend bool operator>(const Ticks& a, const Ticks& b) { return b < a; }
  friend bool operator<=(const Ticks& a, const Ticks& b) { return !(b < a); }
  friend bool operator>=(const Ticks& a, const Ticks& b) { return !(a < b); }

 private:
  void normalize();

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Ticks& t);

inline Ticks min(const Ticks& a, const Ticks& b) { return a < b ? a : b; }
inline Ticks max(const Ticks& a, const Ticks& b) { return a < b ? b : a; }

}  // namespace atomsched
