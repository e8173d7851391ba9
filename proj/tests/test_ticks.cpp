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

#include <numeric>
#include <sstream>

#include "atomsched/errors.hpp"
#include "atomsched/ticks.hpp"

using atomsched::Error;
using atomsched::ParseError;
using atomsched::Ticks;

TEST_CASE("ticks normalize to positive denominator and lowest terms") {
  CHECK(Ticks(2, 4) == Ticks(1, 2));
  CHECK(Ticks(3, -6) == Ticks(-1, 2));
  CHECK(Ticks(-4, -8) == Ticks(1, 2));
  CHECK(Ticks(0, 7).num() == 0);
  CHECK(Ticks(0, 7).den() == 1);
  CHECK(Ticks(6, 3).num() == 2);
  CHECK(Ticks(6, 3).den() == 1);
  CHECK(Ticks(-9, 6).num() == -3);
  CHECK(Ticks(-9, 6).den() == 2);
}

TEST_CASE("ticks construction rejects a zero denominator") {
  CHECK_THROWS_AS(Ticks(1, 0), Error);
}

TEST_CASE("ticks arithmetic matches hand-computed rationals") {
  CHECK(Ticks(1, 2) + Ticks(1, 3) == Ticks(5, 6));
  CHECK(Ticks(1, 2) - Ticks(1, 3) == Ticks(1, 6));
  CHECK(Ticks(3, 4) * Ticks(2, 3) == Ticks(1, 2));
  CHECK(Ticks(1, 2) / Ticks(1, 3) == Ticks(3, 2));
  CHECK(Ticks(5) + Ticks(-5) == Ticks(0));
  CHECK(-Ticks(3, 7) == Ticks(-3, 7));
  CHECK(Ticks(-1, 2) * Ticks(-2, 5) == Ticks(1, 5));
}

TEST_CASE("ticks division by zero throws") {
  CHECK_THROWS_AS(Ticks(1) / Ticks(0), Error);
}

TEST_CASE("ticks compare exactly by value") {
  CHECK(Ticks(1, 3) < Ticks(1, 2));
  CHECK(Ticks(-1, 2) < Ticks(-1, 3));
  CHECK(Ticks(2, 4) <= Ticks(1, 2));
  CHECK(Ticks(1, 2) >= Ticks(2, 4));
  CHECK(Ticks(7, 3) > Ticks(2));
  CHECK(Ticks(1, 2) != Ticks(1, 3));
  CHECK(atomsched::min(Ticks(1, 3), Ticks(1, 2)) == Ticks(1, 3));
  CHECK(atomsched::max(Ticks(1, 3), Ticks(1, 2)) == Ticks(1, 2));
}

TEST_CASE("ticks round-trip through their canonical text form") {
  CHECK(Ticks(3, 2).str() == "3/2");
  CHECK(Ticks(-1).str() == "-1/1");
  CHECK(Ticks(0).str() == "0/1");
  CHECK(Ticks::parse("3/2") == Ticks(3, 2));
  CHECK(Ticks::parse("-7") == Ticks(-7));
  CHECK(Ticks::parse("4/6") == Ticks(2, 3));
  CHECK(Ticks::parse("9/-12") == Ticks(-3, 4));
  for (const Ticks t : {Ticks(0), Ticks(-5, 3), Ticks(22, 7), Ticks(1000000, 999)}) {
    CHECK(Ticks::parse(t.str()) == t);
  }
}

TEST_CASE("ticks parsing rejects malformed text") {
  for (const char* bad : {"", "/", "1/", "/2", "a", "1/b", "1.5", "1/0", "1 / 2", "2/3x"}) {
    CHECK_THROWS_AS(Ticks::parse(bad), ParseError);
  }
}

TEST_CASE("ticks convert to double at machine precision") {
  CHECK(Ticks(1, 2).to_double() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(Ticks(-22, 7).to_double() == doctest::Approx(-22.0 / 7.0).epsilon(1e-15));
  CHECK(Ticks(0).to_double() == 0.0);
}

TEST_CASE("ticks stream insertion uses the canonical form") {
  std::ostringstream os;
  os << Ticks(5, 10);
  CHECK(os.str() == "1/2");
}

TEST_CASE("ticks arithmetic round-trips over a dense grid of small rationals") {
  // (a op b) inverse-op b must reproduce a exactly; normalization invariants
  // hold for every intermediate.
  for (int an = -6; an <= 6; ++an) {
    for (int ad = 1; ad <= 4; ++ad) {
      for (int bn = -6; bn <= 6; ++bn) {
        for (int bd = 1; bd <= 4; ++bd) {
          const Ticks a(an, ad);
          const Ticks b(bn, bd);
          CHECK((a + b) - b == a);
          if (bn != 0) CHECK((a * b) / b == a);
          const Ticks sum = a + b;
          CHECK(sum.den() > 0);
          CHECK(std::gcd(sum.num() < 0 ? -sum.num() : sum.num(), sum.den()) <= 1);
        }
      }
    }
  }
}
