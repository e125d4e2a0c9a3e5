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
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "wavechar/matrix.hpp"

namespace wavechar {

/// Immutable simple undirected graph. Neighbor lists are sorted ascending,
/// duplicate-free, and symmetric; self-loops are not representable.
/// Safe for concurrent reads once constructed.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list. Self-loops and duplicate edges
  /// (in either orientation) are dropped; the number of dropped entries is
  /// written to `dropped` when non-null. Throws InputError on an endpoint
  /// index outside [0, num_nodes).
  static Graph from_edge_list(const std::vector<std::pair<int, int>>& edges,
                              int num_nodes, std::size_t* dropped = nullptr);

  int num_nodes() const { return num_nodes_; }
  int degree(int v) const;
  const std::vector<int>& neighbors(int v) const;
  bool has_edge(int u, int v) const;

 private:
  int num_nodes_ = 0;
  std::vector<std::vector<int>> adjacency_;
};

/// N x m node feature matrix. Row i holds the feature vector of node i.
struct AttributeMatrix {
  std::size_t num_nodes = 0;
  std::size_t num_features = 0;
  std::vector<double> values;  // row-major

  AttributeMatrix() = default;
  AttributeMatrix(std::size_t n, std::size_t m)
      : num_nodes(n), num_features(m), values(n * m, 0.0) {}

  double at(std::size_t node, std::size_t feature) const {
    return values[node * num_features + feature];
  }
  double& at(std::size_t node, std::size_t feature) {
    return values[node * num_features + feature];
  }
};

/// Combinatorial Laplacian L = D - A: degree on the diagonal, -1 per edge.
/// Every row sums to zero.
SymmetricMatrix laplacian(const Graph& g);

/// All nodes at BFS distance <= k from v, including v itself, sorted
/// ascending. k must be >= 1.
std::vector<int> k_hop_neighborhood(const Graph& g, int v, int k);

/// Fraction of connected neighbor pairs: 2*T(v) / (d(v)*(d(v)-1)) where T(v)
/// counts triangles through v. Zero when deg(v) < 2.
double local_clustering_coefficient(const Graph& g, int v);

/// Synthesized two-column node features: ln(1 + degree) and the local
/// clustering coefficient. Used for datasets that ship no features of
/// their own.
AttributeMatrix structural_features(const Graph& g);

}  // namespace wavechar
