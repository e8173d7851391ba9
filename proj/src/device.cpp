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

#include "atomsched/device.hpp"

#include <cmath>
#include <deque>
#include <fstream>

#include <nlohmann/json.hpp>

#include "atomsched/errors.hpp"

namespace atomsched {

void check_timing(const TimingParams& timing) {
  if (!(timing.delta_pi > Ticks(0))) throw Error("delta_pi must be positive");
  if (timing.delta_t < Ticks(0)) throw Error("delta_t must be non-negative");
}

nlohmann::json timing_to_json(const TimingParams& timing) {
  return {{"delta_pi", timing.delta_pi.str()}, {"delta_t", timing.delta_t.str()}};
}

TimingParams timing_from_json(const nlohmann::json& doc) {
  TimingParams t;
  t.delta_pi = Ticks::parse(doc.at("delta_pi").get<std::string>());
  t.delta_t = Ticks::parse(doc.at("delta_t").get<std::string>());
  check_timing(t);
  return t;
}

ConnectivityGraph::ConnectivityGraph(std::vector<Eigen::Vector2d> sites, double radius)
    : radius_(radius), sites_(std::move(sites)) {
  const int n = size();
  const double cutoff = radius + 1e-9;
  adj_.assign(n, std::vector<bool>(n, false));
  neighbors_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if ((sites_[i] - sites_[j]).norm() <= cutoff) {
        adj_[i][j] = adj_[j][i] = true;
        neighbors_[i].push_back(j);
        neighbors_[j].push_back(i);
      }
    }
  }
  // All-pairs hop distances by BFS from every site.
  dist_.assign(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    dist_[s][s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : neighbors_[u]) {
        if (dist_[s][v] < 0) {
          dist_[s][v] = dist_[s][u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
}

bool ConnectivityGraph::adjacent(int i, int j) const {
  if (i == j) return false;
  return adj_[i][j];
}

int ConnectivityGraph::distance(int i, int j) const { return dist_[i][j]; }

ConnectivityGraph ConnectivityGraph::induced(const std::vector<int>& kept) const {
  std::vector<Eigen::Vector2d> sub;
  sub.reserve(kept.size());
  for (int i : kept) {
    if (i < 0 || i >= size()) throw Error("induced: site index out of range");
    sub.push_back(sites_[i]);
  }
  return ConnectivityGraph(std::move(sub), radius_);
}

std::vector<std::pair<int, int>> ConnectivityGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      if (adj_[i][j]) out.emplace_back(i, j);
    }
  }
  return out;
}

ConnectivityGraph triangular_lattice(int rows, int cols) {
  if (rows < 1 || cols < 1) throw Error("triangular_lattice: rows and cols must be >= 1");
  std::vector<Eigen::Vector2d> sites;
  sites.reserve(static_cast<std::size_t>(rows) * cols);
  const double row_height = std::sqrt(3.0) / 2.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      sites.emplace_back(c + 0.5 * r, row_height * r);
    }
  }
  return ConnectivityGraph(std::move(sites), std::sqrt(3.0));
}

bool is_mutually_connected(const ConnectivityGraph& graph, const std::set<int>& sites) {
  for (auto it = sites.begin(); it != sites.end(); ++it) {
    for (auto jt = std::next(it); jt != sites.end(); ++jt) {
      if (!graph.adjacent(*it, *jt)) return false;
    }
  }
  return true;
}

nlohmann::json graph_to_json(const ConnectivityGraph& graph) {
  nlohmann::json sites = nlohmann::json::array();
  for (const auto& s : graph.sites()) sites.push_back({s.x(), s.y()});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [i, j] : graph.edges()) edges.push_back({i, j});
  return {{"sites", std::move(sites)}, {"edges", std::move(edges)}};
}

void save_graph(const ConnectivityGraph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write graph file: " + path);
  out << graph_to_json(graph).dump(2) << "\n";
}

}  // namespace atomsched
