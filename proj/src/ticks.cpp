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

#include "atomsched/ticks.hpp"

#include <charconv>
#include <numeric>
#include <ostream>

#include "atomsched/errors.hpp"

namespace atomsched {

Ticks::Ticks(std::int64_t numerator, std::int64_t denominator)
    : num_(numerator), den_(denominator) {
  if (denominator == 0) throw Error("Ticks: zero denominator");
  normalize();
}

void Ticks::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

std::string Ticks::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Ticks Ticks::parse(const std::string& text) {
  const auto bad = [&]() -> ParseError {
    return ParseError("Ticks: cannot parse rational '" + text + "'");
  };
  std::int64_t p = 0;
  std::int64_t q = 1;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [after_p, ec] = std::from_chars(begin, end, p);
  if (ec != std::errc{}) throw bad();
  if (after_p != end) {
    if (*after_p != '/') throw bad();
    auto [after_q, ec_q] = std::from_chars(after_p + 1, end, q);
    if (ec_q != std::errc{} || after_q != end || q == 0) throw bad();
  }
  return Ticks(p, q);
}

double Ticks::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

Ticks Ticks::operator-() const {
  Ticks r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Ticks& Ticks::operator+=(const Ticks& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Ticks& Ticks::operator-=(const Ticks& rhs) { return *this += -rhs; }

Ticks& Ticks::operator*=(const Ticks& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Ticks& Ticks::operator/=(const Ticks& rhs) {
  if (rhs.num_ == 0) throw Error("Ticks: division by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

bool operator<(const Ticks& a, const Ticks& b) {
  // Denominators are positive after normalization, so cross-multiplication
  // preserves order.
  return a.num_ * b.den_ < b.num_ * a.den_;
}

std::ostream& operator<<(std::ostream& os, const Ticks& t) {
  return os << t.str();
}

}  // namespace atomsched
