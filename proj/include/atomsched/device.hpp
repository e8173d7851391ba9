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

#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "atomsched/ticks.hpp"

namespace atomsched {

/// Channel timing model.  delta_pi bounds every pulse duration (a 2pi pulse
/// takes 2*delta_pi); delta_t is the retargeting time of both channels.
struct TimingParams {
  Ticks delta_pi = 1;
  Ticks delta_t = 1;
};

/// Validates delta_pi > 0 and delta_t >= 0.
void check_timing(const TimingParams& timing);

nlohmann::json timing_to_json(const TimingParams& timing);
TimingParams timing_from_json(const nlohmann::json& doc);

/// Interaction adjacency over fixed trap sites.  Adjacency is symmetric and
/// irreflexive; hop distances are precomputed for routing.
class ConnectivityGraph {
 public:
  ConnectivityGraph() = default;
  /// Builds the graph from site coordinates; two sites are adjacent iff
  /// their Euclidean distance is at most `radius` (+1e-9 slack).
  ConnectivityGraph(std::vector<Eigen::Vector2d> sites, double radius);

  [[nodiscard]] int size() const { return static_cast<int>(sites_.size()); }
  [[nodiscard]] const Eigen::Vector2d& site(int i) const { return sites_[i]; }
  [[nodiscard]] const std::vector<Eigen::Vector2d>& sites() const { return sites_; }
  [[nodiscard]] bool adjacent(int i, int j) const;
  [[nodiscard]] const std::vector<int>& neighbors(int i) const { return neighbors_[i]; }
  [[nodiscard]] int degree(int i) const { return static_cast<int>(neighbors_[i].size()); }
  /// Hop distance between sites; -1 when disconnected.
  [[nodiscard]] int distance(int i, int j) const;
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;
  [[nodiscard]] double radius() const { return radius_; }
  /// Subgraph of the listed sites, renumbered 0..kept.size()-1 in list order.
  [[nodiscard]] ConnectivityGraph induced(const std::vector<int>& kept) const;

 private:
  double radius_ = 0.0;
  std::vector<Eigen::Vector2d> sites_;
  std::vector<std::vector<bool>> adj_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::vector<int>> dist_;
};

/// rows x cols triangular lattice: site (r, c) at (c + r/2, r*sqrt(3)/2),
/// adjacency radius sqrt(3) (nearest and next-nearest neighbours; interior
/// sites have degree 12).  Site index is r*cols + c.
ConnectivityGraph triangular_lattice(int rows, int cols);

/// True iff `sites` form a clique of the adjacency relation.
bool is_mutually_connected(const ConnectivityGraph& graph, const std::set<int>& sites);

nlohmann::json graph_to_json(const ConnectivityGraph& graph);
void save_graph(const ConnectivityGraph& graph, const std::string& path);

}  // namespace atomsched
