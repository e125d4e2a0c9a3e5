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
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "wavechar/errors.hpp"
#include "wavechar/similarity.hpp"

using namespace wavechar;

namespace {

SortedSignature sig(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return {0, std::move(values)};
}

}  // namespace

TEST_CASE("assignment distance on hand examples") {
  CHECK(mdpa(sig({1, 2, 3}), sig({2, 2, 2})) == 2.0);
  CHECK(mdpa(sig({1, 2, 3}), sig({1, 2, 3})) == 0.0);
  CHECK(mdpa(sig({0, 0}), sig({1, 1})) == 2.0);
  CHECK_THROWS_AS(mdpa(sig({1}), sig({1, 2})), InputError);
}

TEST_CASE("sorted-form distance equals min over assignments") {
  testutil::Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int len = rng.uniform_int(2, 7);
    std::vector<double> x(len), y(len);
    for (int i = 0; i < len; ++i) {
      x[i] = rng.dyadic();
      y[i] = rng.dyadic();
    }
    const double brute = mdpa_bruteforce_oracle(x, y);

    std::vector<double> xs = x, ys = y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    CHECK(mdpa({0, xs}, {1, ys}) == brute);  // exact, dyadic inputs
  }
  CHECK_THROWS_AS(
      mdpa_bruteforce_oracle(std::vector<double>(9, 0.0),
                             std::vector<double>(9, 0.0)),
      InputError);
}

TEST_CASE("assignment distance is a metric on sorted lists") {
  testutil::Rng rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int len = rng.uniform_int(2, 10);
    auto draw = [&] {
      std::vector<double> v(len);
      for (double& e : v) e = rng.dyadic();
      return sig(std::move(v));
    };
    const SortedSignature a = draw(), b = draw(), c = draw();
    CHECK(mdpa(a, b) >= 0.0);
    CHECK(mdpa(a, a) == 0.0);
    CHECK(mdpa(a, b) == mdpa(b, a));
    CHECK(mdpa(a, c) <= mdpa(a, b) + mdpa(b, c) + 1e-12);
  }
}

TEST_CASE("sorted signatures are nondecreasing wavelet columns") {
  testutil::Rng rng(33);
  const Graph g = testutil::random_connected_graph(rng, 12, 0.2);
  const WaveletMatrix psi = heat_wavelets(g, 0.5);
  for (int v = 0; v < g.num_nodes(); ++v) {
    const SortedSignature s = sorted_signature(psi, v);
    CHECK(s.node == v);
    REQUIRE(s.values.size() == 12);
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    double sum = 0.0;
    for (double x : s.values) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("topological similarity is symmetric, unit on the diagonal") {
  testutil::Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = rng.uniform_int(2, 15);
    const Graph g = testutil::random_graph(rng, n, 0.3);
    const WaveletMatrix psi = heat_wavelets(g, 0.5);
    for (int i = 0; i < n; ++i) {
      CHECK(topological_similarity(psi, i, i) == 1.0);
      for (int j = 0; j < n; ++j) {
        const double s = topological_similarity(psi, i, j);
        CHECK(s > 0.0);
        CHECK(s <= 1.0);
        CHECK(s == topological_similarity(psi, j, i));
      }
    }
  }
}

TEST_CASE("structurally identical nodes have similarity one") {
  // Both endpoints of an isolated edge see the same sorted column.
  const Graph p2 = Graph::from_edge_list({{0, 1}}, 2);
  const WaveletMatrix psi = heat_wavelets(p2, 0.7);
  CHECK(topological_similarity(psi, 0, 1) == doctest::Approx(1.0));
}

TEST_CASE("vertex-transitive and singleton supports give uniform weights") {
  const Graph k3 = Graph::from_edge_list({{0, 1}, {1, 2}, {0, 2}}, 3);
  const WaveletMatrix psi3 = heat_wavelets(k3, 0.5);
  for (int v = 0; v < 3; ++v) {
    for (const TransitionWeights& w :
         {similarity_transition(k3, psi3, v, 1), influence_transition(k3, v, 1)}) {
      REQUIRE(w.weights.size() == 3);
      for (double p : w.weights)
        CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
  }

  const Graph p2 = Graph::from_edge_list({{0, 1}}, 2);
  const WaveletMatrix psi2 = heat_wavelets(p2, 0.5);
  const TransitionWeights even = similarity_transition(p2, psi2, 0, 1);
  REQUIRE(even.weights.size() == 2);
  CHECK(even.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(even.weights[1] == doctest::Approx(0.5).epsilon(1e-12));

  // Node 2 has no edges, so both variants put all mass on it.
  const Graph lonely = Graph::from_edge_list({{0, 1}}, 3);
  const WaveletMatrix psil = heat_wavelets(lonely, 0.5);
  for (const TransitionWeights& w :
       {similarity_transition(lonely, psil, 2, 1), influence_transition(lonely, 2, 1)}) {
    CHECK(w.support == std::vector<int>{2});
    REQUIRE(w.weights.size() == 1);
    CHECK(w.weights[0] == 1.0);
  }
}

TEST_CASE("topological similarity is permutation invariant") {
  testutil::Rng rng(37);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = rng.uniform_int(2, 12);
    const Graph g = testutil::random_graph(rng, n, 0.3);
    const std::vector<int> perm = testutil::random_permutation(rng, n);
    const WaveletMatrix psi = heat_wavelets(g, 0.5);
    const WaveletMatrix moved =
        heat_wavelets(testutil::permute_graph(g, perm), 0.5);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        CHECK(std::abs(topological_similarity(moved, perm[i], perm[j]) -
                       topological_similarity(psi, i, j)) <= 1e-9);
  }
}

TEST_CASE("influence weights on a star") {
  // Center of K_{1,3}: smoothed degrees are 4 for the hub and 2 per leaf.
  const Graph star = Graph::from_edge_list({{0, 1}, {0, 2}, {0, 3}}, 4);
  const TransitionWeights w = influence_transition(star, 0, 1);
  CHECK(w.source == 0);
  CHECK(w.support == std::vector<int>{0, 1, 2, 3});
  REQUIRE(w.weights.size() == 4);
  CHECK(w.weights[0] == doctest::Approx(0.4));
  CHECK(w.weights[1] == doctest::Approx(0.2));
  CHECK(w.weights[2] == doctest::Approx(0.2));
  CHECK(w.weights[3] == doctest::Approx(0.2));
}

TEST_CASE("transition weights are distributions over the k-hop ball") {
  testutil::Rng rng(35);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = rng.uniform_int(2, 14);
    const Graph g = testutil::random_graph(rng, n, 0.25);
    const WaveletMatrix psi = heat_wavelets(g, 0.5);
    const auto dist = testutil::floyd_warshall(g);
    for (int v = 0; v < n; ++v) {
      for (int k = 1; k <= 3; ++k) {
        for (const TransitionWeights& w :
             {similarity_transition(g, psi, v, k), influence_transition(g, v, k)}) {
          CHECK(w.source == v);
          CHECK(w.hops == k);
          CHECK(std::is_sorted(w.support.begin(), w.support.end()));
          REQUIRE(w.support.size() == w.weights.size());
          CHECK(std::binary_search(w.support.begin(), w.support.end(), v));
          double sum = 0.0;
          for (std::size_t i = 0; i < w.support.size(); ++i) {
            CHECK(dist[v][w.support[i]] <= k);
            CHECK(w.weights[i] > 0.0);
            sum += w.weights[i];
          }
          CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("similarity weights are proportional to pair similarity") {
  testutil::Rng rng(36);
  const Graph g = testutil::random_connected_graph(rng, 10, 0.2);
  const WaveletMatrix psi = heat_wavelets(g, 0.5);
  for (int v = 0; v < g.num_nodes(); ++v) {
    const TransitionWeights w = similarity_transition(g, psi, v, 2);
    double denom = 0.0;
    for (int u : w.support) denom += topological_similarity(psi, v, u);
    for (std::size_t i = 0; i < w.support.size(); ++i)
      CHECK(w.weights[i] == doctest::Approx(
                topological_similarity(psi, v, w.support[i]) / denom));
  }
}
