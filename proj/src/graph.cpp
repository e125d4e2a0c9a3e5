/* Copyright 2026 The wavechar Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "wavechar/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "wavechar/errors.hpp"

namespace wavechar {

Graph Graph::from_edge_list(const std::vector<std::pair<int, int>>& edges,
                            int num_nodes, std::size_t* dropped) {
  if (num_nodes < 0) throw InputError("from_edge_list: negative node count");
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= num_nodes || v < 0 || v >= num_nodes) {
      throw InputError("from_edge_list: edge (" + std::to_string(u) + "," +
                       std::to_string(v) + ") out of range for " +
                       std::to_string(num_nodes) + " nodes");
    }
  }

  // Canonicalize to (min,max), drop loops, dedup.
  std::vector<std::pair<int, int>> canon;
  canon.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  if (dropped) *dropped = edges.size() - canon.size();

  Graph g;
  g.num_nodes_ = num_nodes;
  g.adjacency_.resize(num_nodes);
  for (const auto& [u, v] : canon) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& list : g.adjacency_) std::sort(list.begin(), list.end());
  return g;
}

int Graph::degree(int v) const {
  if (v < 0 || v >= num_nodes_)
    throw InputError("degree: node " + std::to_string(v) + " out of range");
  return static_cast<int>(adjacency_[v].size());
}

const std::vector<int>& Graph::neighbors(int v) const {
  if (v < 0 || v >= num_nodes_)
    throw InputError("neighbors: node " + std::to_string(v) + " out of range");
  return adjacency_[v];
}

bool Graph::has_edge(int u, int v) const {
  const auto& list = neighbors(u);
  return std::binary_search(list.begin(), list.end(), v);
}

SymmetricMatrix laplacian(const Graph& g) {
  const int n = g.num_nodes();
  SymmetricMatrix l(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    l.set(v, v, static_cast<double>(g.degree(v)));
    for (int u : g.neighbors(v))
      if (u > v) l.set(v, u, -1.0);
  }
  return l;
}

std::vector<int> k_hop_neighborhood(const Graph& g, int v, int k) {
  if (v < 0 || v >= g.num_nodes())
    throw InputError("k_hop_neighborhood: node " + std::to_string(v) +
                     " out of range");
  if (k < 1) throw InputError("k_hop_neighborhood: hop count must be >= 1");

  std::vector<int> dist(g.num_nodes(), -1);
  std::queue<int> frontier;
  dist[v] = 0;
  frontier.push(v);
  std::vector<int> result{v};
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    if (dist[u] == k) continue;
    for (int w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        result.push_back(w);
        frontier.push(w);
      }
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

double local_clustering_coefficient(const Graph& g, int v) {
  const auto& nv = g.neighbors(v);
  const std::size_t d = nv.size();
  if (d < 2) return 0.0;
  std::size_t triangles = 0;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = a + 1; b < d; ++b)
      if (g.has_edge(nv[a], nv[b])) ++triangles;
  return 2.0 * static_cast<double>(triangles) /
         (static_cast<double>(d) * static_cast<double>(d - 1));
}

AttributeMatrix structural_features(const Graph& g) {
  const int n = g.num_nodes();
  AttributeMatrix a(static_cast<std::size_t>(n), 2);
  for (int v = 0; v < n; ++v) {
    a.at(v, 0) = std::log1p(static_cast<double>(g.degree(v)));
    a.at(v, 1) = local_clustering_coefficient(g, v);
  }
  return a;
}

}  // namespace wavechar
