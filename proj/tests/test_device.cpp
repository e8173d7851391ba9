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

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "atomsched/device.hpp"
#include "atomsched/errors.hpp"
#include "helpers.hpp"

using namespace atomsched;
namespace ts = atomsched::testing;

TEST_CASE("timing validation enforces positive pulse time") {
  check_timing(TimingParams{Ticks(1), Ticks(0)});
  check_timing(TimingParams{Ticks(1, 2), Ticks(1, 3)});
  CHECK_THROWS_AS(check_timing(TimingParams{Ticks(0), Ticks(1)}), Error);
  CHECK_THROWS_AS(check_timing(TimingParams{Ticks(-1), Ticks(1)}), Error);
  CHECK_THROWS_AS(check_timing(TimingParams{Ticks(1), Ticks(-1, 2)}), Error);
}

TEST_CASE("timing json round-trips exact rationals") {
  const TimingParams t{Ticks(3, 2), Ticks(1, 3)};
  const TimingParams back = timing_from_json(timing_to_json(t));
  CHECK(back.delta_pi == t.delta_pi);
  CHECK(back.delta_t == t.delta_t);
  const nlohmann::json j = timing_to_json(t);
  CHECK(j.at("delta_pi") == "3/2");
  CHECK(j.at("delta_t") == "1/3");
}

TEST_CASE("explicit graphs expose symmetric irreflexive adjacency") {
  const ConnectivityGraph g(
      {Eigen::Vector2d{0, 0}, Eigen::Vector2d{1, 0}, Eigen::Vector2d{2, 0},
       Eigen::Vector2d{0, 1}},
      1.0);
  CHECK(g.size() == 4);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 0));
  CHECK_FALSE(g.adjacent(0, 0));
  CHECK_FALSE(g.adjacent(0, 2));
  CHECK(g.adjacent(0, 3));
  CHECK_FALSE(g.adjacent(1, 3));  // distance sqrt(2) > 1
  CHECK(g.degree(0) == 2);
  CHECK(g.degree(2) == 1);
  const auto es = g.edges();
  CHECK(es.size() == 3);
  for (const auto& [a, b] : es) CHECK(a < b);
}

TEST_CASE("adjacency radius carries a small inclusion slack") {
  // Exactly-at-radius pairs stay adjacent despite floating-point dust.
  const ConnectivityGraph g({Eigen::Vector2d{0, 0}, Eigen::Vector2d{std::sqrt(3.0), 0}},
                            std::sqrt(3.0));
  CHECK(g.adjacent(0, 1));
}

TEST_CASE("hop distances follow shortest paths and mark disconnection") {
  const ConnectivityGraph g(
      {Eigen::Vector2d{0, 0}, Eigen::Vector2d{1, 0}, Eigen::Vector2d{2, 0},
       Eigen::Vector2d{10, 10}},
      1.0);
  CHECK(g.distance(0, 0) == 0);
  CHECK(g.distance(0, 1) == 1);
  CHECK(g.distance(0, 2) == 2);
  CHECK(g.distance(2, 0) == 2);
  CHECK(g.distance(0, 3) == -1);
}

TEST_CASE("induced subgraphs renumber sites in list order") {
  const ConnectivityGraph g(
      {Eigen::Vector2d{0, 0}, Eigen::Vector2d{1, 0}, Eigen::Vector2d{2, 0}}, 1.0);
  const ConnectivityGraph sub = g.induced({2, 1});
  CHECK(sub.size() == 2);
  CHECK(sub.site(0) == Eigen::Vector2d{2, 0});
  CHECK(sub.adjacent(0, 1));
}

TEST_CASE("triangular lattice places sites on the offset grid") {
  const ConnectivityGraph g = triangular_lattice(3, 4);
  CHECK(g.size() == 12);
  // Site (r, c) sits at (c + r/2, r*sqrt(3)/2), indexed r*cols + c.
  const Eigen::Vector2d p = g.site(2 * 4 + 1);
  CHECK(p.x() == doctest::Approx(1.0 + 1.0));
  CHECK(p.y() == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("triangular lattice interior sites have exactly twelve neighbours") {
  const ConnectivityGraph g = triangular_lattice(7, 7);
  CHECK(g.degree(3 * 7 + 3) == 12);
  for (int i = 0; i < g.size(); ++i) CHECK(g.degree(i) <= 12);
}

TEST_CASE("degenerate lattices behave") {
  const ConnectivityGraph single = triangular_lattice(1, 1);
  CHECK(single.size() == 1);
  CHECK(single.edges().empty());
  CHECK_THROWS_AS(triangular_lattice(0, 3), Error);

  // All four sites of a 2x2 patch are pairwise within sqrt(3).
  const ConnectivityGraph square = triangular_lattice(2, 2);
  CHECK(is_mutually_connected(square, {0, 1, 2, 3}));
}

TEST_CASE("mutual connectivity detects cliques only") {
  const ConnectivityGraph g = triangular_lattice(7, 7);
  CHECK(is_mutually_connected(g, {0, 1, 7}));          // unit triangle
  CHECK(is_mutually_connected(g, {0}));                // trivially
  CHECK_FALSE(is_mutually_connected(g, {0, 6 * 7 + 6}));  // opposite corners
  CHECK_FALSE(is_mutually_connected(g, {0, 1, 2}));    // collinear triple, ends too far
}

TEST_CASE("graph json lists sites and edges") {
  const ConnectivityGraph g = triangular_lattice(2, 2);
  const nlohmann::json j = graph_to_json(g);
  CHECK(j.at("sites").size() == 4);
  CHECK(j.at("edges").size() == 6);

  const ts::TempDir dir;
  const std::string path = dir.file("graph.json");
  save_graph(g, path);
  CHECK(std::filesystem::exists(path));
}
