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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "wavechar/errors.hpp"
#include "wavechar/graph.hpp"

using namespace wavechar;

TEST_CASE("edge list construction dedups and validates") {
  std::size_t dropped = 0;
  const Graph g = Graph::from_edge_list({{0, 1}, {1, 0}, {1, 1}, {1, 2}}, 4,
                                        &dropped);
  CHECK(g.num_nodes() == 4);
  CHECK(dropped == 2);  // the reversed duplicate and the self-loop
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(3) == 0);  // isolated node implied by num_nodes
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.neighbors(1) == std::vector<int>{0, 2});

  CHECK_THROWS_AS(Graph::from_edge_list({{0, 4}}, 4), InputError);
  CHECK_THROWS_AS(Graph::from_edge_list({{-1, 0}}, 4), InputError);
}

TEST_CASE("neighbor lists are sorted and symmetric on random graphs") {
  testutil::Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(1, 25);
    const Graph g = testutil::random_graph(rng, n, 0.3);
    int twice_edges = 0;
    for (int v = 0; v < n; ++v) {
      const auto& nb = g.neighbors(v);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
      twice_edges += static_cast<int>(nb.size());
      for (int u : nb) {
        CHECK(u != v);
        CHECK(g.has_edge(u, v));
      }
    }
    CHECK(twice_edges % 2 == 0);
  }
}

TEST_CASE("laplacian rows sum to zero and diagonal equals degree") {
  testutil::Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(1, 20);
    const Graph g = testutil::random_graph(rng, n, 0.4);
    const SymmetricMatrix lap = laplacian(g);
    for (int i = 0; i < n; ++i) {
      CHECK(lap.at(i, i) == static_cast<double>(g.degree(i)));
      double row_sum = 0.0;
      for (int j = 0; j < n; ++j) row_sum += lap.at(i, j);
      CHECK(row_sum == 0.0);
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        CHECK(lap.at(i, j) == (g.has_edge(i, j) ? -1.0 : 0.0));
      }
    }
  }
}

TEST_CASE("k-hop neighborhood equals Floyd-Warshall ball") {
  testutil::Rng rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.uniform_int(1, 18);
    const Graph g = testutil::random_graph(rng, n, 0.25);
    const auto dist = testutil::floyd_warshall(g);
    for (int v = 0; v < n; ++v) {
      for (int k = 1; k <= 4; ++k) {
        std::vector<int> expected;
        for (int u = 0; u < n; ++u)
          if (dist[v][u] <= k) expected.push_back(u);
        CHECK(k_hop_neighborhood(g, v, k) == expected);
      }
    }
  }
  const Graph g = testutil::random_graph(rng, 5, 0.5);
  CHECK_THROWS_AS(k_hop_neighborhood(g, 5, 1), InputError);
  CHECK_THROWS_AS(k_hop_neighborhood(g, 0, 0), InputError);
}

TEST_CASE("neighborhood always contains the source and grows with k") {
  testutil::Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = rng.uniform_int(2, 20);
    const Graph g = testutil::random_graph(rng, n, 0.2);
    for (int v = 0; v < n; ++v) {
      std::vector<int> prev;
      for (int k = 1; k <= 5; ++k) {
        const auto ball = k_hop_neighborhood(g, v, k);
        CHECK(std::binary_search(ball.begin(), ball.end(), v));
        CHECK(std::includes(ball.begin(), ball.end(), prev.begin(),
                            prev.end()));
        prev = ball;
      }
    }
  }
}

TEST_CASE("neighborhoods and structural features follow node relabelings") {
  const Graph path = Graph::from_edge_list({{0, 1}, {1, 2}}, 3);
  CHECK(k_hop_neighborhood(path, 0, 1) == std::vector<int>{0, 1});
  CHECK(k_hop_neighborhood(path, 0, 2) == std::vector<int>{0, 1, 2});
  const Graph lonely = Graph::from_edge_list({{0, 1}}, 3);
  CHECK(k_hop_neighborhood(lonely, 2, 4) == std::vector<int>{2});

  testutil::Rng rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(2, 14);
    const Graph g = testutil::random_graph(rng, n, 0.25);
    const std::vector<int> perm = testutil::random_permutation(rng, n);
    const Graph h = testutil::permute_graph(g, perm);

    // Same degree and same neighbor-pair counts, so rows move bitwise.
    const AttributeMatrix a = structural_features(g);
    const AttributeMatrix b = structural_features(h);
    for (int v = 0; v < n; ++v) {
      for (std::size_t p = 0; p < a.num_features; ++p)
        CHECK(b.at(perm[v], p) == a.at(v, p));

      for (int k = 1; k <= 3; ++k) {
        std::vector<int> image;
        for (int u : k_hop_neighborhood(g, v, k)) image.push_back(perm[u]);
        std::sort(image.begin(), image.end());
        CHECK(k_hop_neighborhood(h, perm[v], k) == image);
      }
    }
  }
}

TEST_CASE("clustering coefficient matches hand values") {
  // K4 minus edge (2,3): node 0 has neighbors {1,2,3} with one edge among
  // them missing, so 2 of 3 pairs connect.
  const Graph g = Graph::from_edge_list(
      {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}, 4);
  CHECK(local_clustering_coefficient(g, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(local_clustering_coefficient(g, 2) == doctest::Approx(1.0));

  const Graph triangle = Graph::from_edge_list({{0, 1}, {1, 2}, {0, 2}}, 3);
  CHECK(local_clustering_coefficient(triangle, 0) == 1.0);

  const Graph star = Graph::from_edge_list({{0, 1}, {0, 2}, {0, 3}}, 4);
  CHECK(local_clustering_coefficient(star, 0) == 0.0);
  CHECK(local_clustering_coefficient(star, 1) == 0.0);  // degree 1
}

TEST_CASE("clustering coefficient equals brute-force pair counting") {
  testutil::Rng rng(15);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(2, 16);
    const Graph g = testutil::random_graph(rng, n, 0.35);
    for (int v = 0; v < n; ++v) {
      const auto& nb = g.neighbors(v);
      const int deg = static_cast<int>(nb.size());
      double expected = 0.0;
      if (deg >= 2) {
        int linked = 0;
        for (std::size_t a = 0; a < nb.size(); ++a)
          for (std::size_t b = a + 1; b < nb.size(); ++b)
            if (g.has_edge(nb[a], nb[b])) ++linked;
        expected = 2.0 * linked / (static_cast<double>(deg) * (deg - 1));
      }
      CHECK(local_clustering_coefficient(g, v) == doctest::Approx(expected));
    }
  }
}

TEST_CASE("structural features are log-degree and clustering") {
  const Graph p2 = Graph::from_edge_list({{0, 1}}, 2);
  const AttributeMatrix f2 = structural_features(p2);
  CHECK(f2.num_nodes == 2);
  CHECK(f2.num_features == 2);
  CHECK(f2.at(0, 0) == doctest::Approx(std::log(2.0)));
  CHECK(f2.at(0, 1) == 0.0);

  const Graph k3 = Graph::from_edge_list({{0, 1}, {1, 2}, {0, 2}}, 3);
  const AttributeMatrix f3 = structural_features(k3);
  for (int v = 0; v < 3; ++v) {
    CHECK(f3.at(v, 0) == doctest::Approx(std::log(3.0)));
    CHECK(f3.at(v, 1) == 1.0);
  }

  const Graph lonely = Graph::from_edge_list({}, 1);
  const AttributeMatrix f1 = structural_features(lonely);
  CHECK(f1.at(0, 0) == 0.0);
  CHECK(f1.at(0, 1) == 0.0);
}
