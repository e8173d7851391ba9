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

#include "atomsched/transpiler.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <optional>
#include <set>

#include <nlohmann/json.hpp>

#include "atomsched/errors.hpp"
#include "atomsched/layered.hpp"
#include "atomsched/passes.hpp"

namespace atomsched {

Placement place_initial(const Circuit& circuit, const ConnectivityGraph& graph) {
  const int n = circuit.n_qubits;
  if (graph.size() < n) throw Error("place_initial: graph has fewer sites than qubits");

  std::vector<std::vector<int>> weight(static_cast<std::size_t>(n),
                                       std::vector<int>(static_cast<std::size_t>(n), 0));
  std::vector<int> first_multi(static_cast<std::size_t>(n), std::numeric_limits<int>::max());
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const auto qs = gate_qubits(circuit.gates[i]);
    if (qs.size() < 2) continue;
    for (QubitIndex q : qs) {
      auto& first = first_multi[static_cast<std::size_t>(q)];
      first = std::min(first, static_cast<int>(i));
    }
    for (std::size_t a = 0; a < qs.size(); ++a) {
      for (std::size_t b = a + 1; b < qs.size(); ++b) {
        weight[static_cast<std::size_t>(qs[a])][static_cast<std::size_t>(qs[b])] += 1;
        weight[static_cast<std::size_t>(qs[b])][static_cast<std::size_t>(qs[a])] += 1;
      }
    }
  }

  std::vector<QubitIndex> order(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) order[static_cast<std::size_t>(q)] = q;
  std::stable_sort(order.begin(), order.end(), [&](QubitIndex a, QubitIndex b) {
    return first_multi[static_cast<std::size_t>(a)] < first_multi[static_cast<std::size_t>(b)];
  });

  Placement placement;
  placement.logical_to_site.assign(static_cast<std::size_t>(n), -1);
  std::vector<bool> taken(static_cast<std::size_t>(graph.size()), false);
  const auto hop = [&](int a, int b) {
    const int d = graph.distance(a, b);
    return d < 0 ? 2 * graph.size() : d;
  };
  for (QubitIndex q : order) {
    long best_score = std::numeric_limits<long>::max();
    int best_site = -1;
    for (int s = 0; s < graph.size(); ++s) {
      if (taken[static_cast<std::size_t>(s)]) continue;
      long score = 0;
      for (int p = 0; p < n; ++p) {
        const int site_p = placement.logical_to_site[static_cast<std::size_t>(p)];
        if (site_p < 0) continue;
        score += static_cast<long>(weight[static_cast<std::size_t>(q)][static_cast<std::size_t>(p)]) *
                 hop(s, site_p);
      }
      if (score < best_score) {
        best_score = score;
        best_site = s;
      }
    }
    placement.logical_to_site[static_cast<std::size_t>(q)] = best_site;
    taken[static_cast<std::size_t>(best_site)] = true;
  }
  return placement;
}

namespace {

long pairwise_hops(const ConnectivityGraph& graph, const std::vector<int>& sites) {
  long total = 0;
  for (std::size_t a = 0; a < sites.size(); ++a) {
    for (std::size_t b = a + 1; b < sites.size(); ++b) {
      const int d = graph.distance(sites[a], sites[b]);
      if (d < 0) throw Error("route: gate spans disconnected lattice components");
      total += d;
    }
  }
  return total;
}

bool clique(const ConnectivityGraph& graph, const std::vector<int>& sites) {
  return is_mutually_connected(graph, std::set<int>(sites.begin(), sites.end()));
}

// All mutually connected k-site subsets, ascending within each and emitted in
// lexicographic order so downstream tie-breaks are stable.
void collect_cliques(const ConnectivityGraph& graph, std::vector<int>& partial, int next_min,
                     std::size_t k, std::vector<std::vector<int>>& out) {
  if (partial.size() == k) {
    out.push_back(partial);
    return;
  }
  for (int s = next_min; s < graph.size(); ++s) {
    bool compatible = true;
    for (int p : partial) {
      if (!graph.adjacent(p, s)) {
        compatible = false;
        break;
      }
    }
    if (!compatible) continue;
    partial.push_back(s);
    collect_cliques(graph, partial, s + 1, k, out);
    partial.pop_back();
  }
}

// Shortest site path from -> to excluding `from` itself, never entering a
// blocked site. Empty path when from == to; nullopt when unreachable.
std::optional<std::vector<int>> site_path(const ConnectivityGraph& graph, int from, int to,
                                          const std::vector<bool>& blocked) {
  if (from == to) return std::vector<int>{};
  std::vector<int> parent(static_cast<std::size_t>(graph.size()), -2);
  parent[static_cast<std::size_t>(from)] = -1;
  std::vector<int> frontier{from};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier) {
      for (int v : graph.neighbors(u)) {
        if (parent[static_cast<std::size_t>(v)] != -2 || blocked[static_cast<std::size_t>(v)]) {
          continue;
        }
        parent[static_cast<std::size_t>(v)] = u;
        if (v == to) {
          std::vector<int> path;
          for (int x = to; x != from; x = parent[static_cast<std::size_t>(x)]) path.push_back(x);
          std::reverse(path.begin(), path.end());
          return path;
        }
        next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

Circuit route(const Circuit& circuit, const ConnectivityGraph& graph,
              const Placement& placement) {
  const int n = circuit.n_qubits;
  if (static_cast<int>(placement.logical_to_site.size()) != n) {
    throw Error("route: placement size mismatch");
  }
  std::vector<int> pos = placement.logical_to_site;  // logical -> site
  std::vector<int> occupant(static_cast<std::size_t>(graph.size()), -1);
  for (int q = 0; q < n; ++q) {
    const int s = pos[static_cast<std::size_t>(q)];
    if (s < 0 || s >= graph.size()) throw Error("route: placement site out of range");
    if (occupant[static_cast<std::size_t>(s)] >= 0) throw Error("route: placement not injective");
    occupant[static_cast<std::size_t>(s)] = q;
  }

  Circuit out;
  out.n_qubits = graph.size();
  int swaps = 0;

  const auto exchange = [&](int s, int t) {
    const int qs = occupant[static_cast<std::size_t>(s)];
    const int qt = occupant[static_cast<std::size_t>(t)];
    if (qs >= 0) pos[static_cast<std::size_t>(qs)] = t;
    if (qt >= 0) pos[static_cast<std::size_t>(qt)] = s;
    std::swap(occupant[static_cast<std::size_t>(s)], occupant[static_cast<std::size_t>(t)]);
    out.gates.emplace_back(SwapGate{std::min(s, t), std::max(s, t)});
    ++swaps;
  };

  for (const Gate& gate : circuit.gates) {
    const auto logical = gate_qubits(gate);
    if (logical.size() >= 2) {
      const auto current_sites = [&] {
        std::vector<int> sites;
        sites.reserve(logical.size());
        for (QubitIndex q : logical) sites.push_back(pos[static_cast<std::size_t>(q)]);
        return sites;
      };
      long guard = 4 * (pairwise_hops(graph, current_sites()) + graph.size() + 4);
      while (!clique(graph, current_sites())) {
        if (--guard < 0) throw Error("route: failed to converge");
        const std::vector<int> sites = current_sites();
        const long base = pairwise_hops(graph, sites);
        long best_gain = 0;
        std::pair<int, int> best_swap{-1, -1};
        for (int s : sites) {
          for (int t : graph.neighbors(s)) {
            std::vector<int> moved = sites;
            for (int& x : moved) x = (x == s) ? t : (x == t ? s : x);
            const long gain = base - pairwise_hops(graph, moved);
            const auto key = std::make_pair(std::min(s, t), std::max(s, t));
            if (gain > best_gain || (gain == best_gain && gain > 0 && key < best_swap)) {
              best_gain = gain;
              best_swap = key;
            }
          }
        }
        if (best_gain > 0) {
          exchange(best_swap.first, best_swap.second);
          continue;
        }
        // Plateau: no single exchange helps (e.g. the only useful step site is
        // held by another member of the same gate). Pick the cheapest mutually
        // connected target region and walk each member to its slot along a
        // shortest path that avoids members already parked.
        std::vector<std::vector<int>> regions;
        std::vector<int> partial;
        collect_cliques(graph, partial, 0, logical.size(), regions);
        if (regions.empty()) {
          throw Error("route: lattice has no mutually connected region large enough for gate");
        }
        long best_cost = -1;
        std::vector<int> targets;
        for (const auto& region : regions) {
          std::vector<int> perm = region;
          do {
            long cost = 0;
            for (std::size_t i = 0; i < perm.size(); ++i) {
              cost += graph.distance(pos[static_cast<std::size_t>(logical[i])], perm[i]);
            }
            if (best_cost < 0 || cost < best_cost) {
              best_cost = cost;
              targets = perm;
            }
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
        std::vector<bool> parked(static_cast<std::size_t>(graph.size()), false);
        for (std::size_t i = 0; i < logical.size(); ++i) {
          int at = pos[static_cast<std::size_t>(logical[i])];
          const auto path = site_path(graph, at, targets[i], parked);
          if (!path) throw Error("route: failed to converge");
          for (int nxt : *path) {
            exchange(at, nxt);
            at = nxt;
          }
          parked[static_cast<std::size_t>(targets[i])] = true;
        }
      }
    }
    out.gates.push_back(relabel_gate(gate, pos));
  }

  nlohmann::json meta = circuit.metadata();
  meta["placement"] = {{"initial", placement.logical_to_site},
                       {"final", pos},
                       {"swaps_added", swaps}};
  out.set_metadata(meta);
  return out;
}

namespace {

void append_native(std::vector<Gate>& gates, const Gate& gate) {
  constexpr double pi = std::numbers::pi;
  if (const auto* h = std::get_if<HGate>(&gate)) {
    gates.emplace_back(VzGate{h->qubit, pi});
    gates.emplace_back(make_r(h->qubit, pi / 2.0, pi / 2.0));
  } else if (const auto* x = std::get_if<XGate>(&gate)) {
    gates.emplace_back(make_r(x->qubit, pi, 0.0));
  } else if (const auto* cx = std::get_if<CnotGate>(&gate)) {
    append_native(gates, HGate{cx->target});
    gates.emplace_back(make_mcz({cx->control, cx->target}));
    append_native(gates, HGate{cx->target});
  } else if (const auto* sw = std::get_if<SwapGate>(&gate)) {
    append_native(gates, CnotGate{sw->a, sw->b});
    append_native(gates, CnotGate{sw->b, sw->a});
    append_native(gates, CnotGate{sw->a, sw->b});
  } else if (const auto* ccz = std::get_if<CczGate>(&gate)) {
    gates.emplace_back(make_mcz({ccz->a, ccz->b, ccz->c}));
  } else {
    gates.push_back(gate);
  }
}

}  // namespace

Circuit decompose_nonnative(const Circuit& circuit) {
  Circuit out;
  out.n_qubits = circuit.n_qubits;
  out.metadata_json = circuit.metadata_json;
  for (const Gate& gate : circuit.gates) append_native(out.gates, gate);
  return out;
}

std::pair<Circuit, TranspileStats> transpile(const Circuit& circuit,
                                             const ConnectivityGraph& graph) {
  const Placement placement = place_initial(circuit, graph);
  const Circuit routed = route(circuit, graph, placement);
  Circuit lowered = decompose_nonnative(routed);
  lowered = merge_adjacent_1q(lowered);
  lowered = eliminate_virtual_z(lowered);
  lowered = remove_redundant_mcz(lowered);
  auto [final_circuit, removed] = strip_classical_qubits(lowered);
  final_circuit = merge_adjacent_1q(final_circuit);

  // Wires of the final circuit are the surviving sites, in ascending order.
  std::vector<int> kept;
  for (int s = 0; s < graph.size(); ++s) {
    if (!std::binary_search(removed.begin(), removed.end(), s)) kept.push_back(s);
  }
  nlohmann::json meta = final_circuit.metadata();
  meta["sites"] = kept;
  final_circuit.set_metadata(meta);

  TranspileStats stats;
  stats.swaps_added = routed.metadata().at("placement").at("swaps_added").get<int>();
  stats.layers = layerize(final_circuit).layer_count();
  stats.qubits = final_circuit.n_qubits;
  return {std::move(final_circuit), stats};
}

}  // namespace atomsched
