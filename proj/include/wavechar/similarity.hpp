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

#include <vector>

#include "wavechar/graph.hpp"
#include "wavechar/spectral.hpp"

namespace wavechar {

/// A node's wavelet column sorted ascending. Two signatures with equal
/// multisets have distance zero under mdpa().
struct SortedSignature {
  int node = -1;
  std::vector<double> values;  // nondecreasing
};

/// Transition distribution of one node over its k-hop neighborhood:
/// support is the neighborhood sorted ascending (always containing the
/// source), weights are nonnegative and sum to 1.
struct TransitionWeights {
  int source = -1;
  int hops = 0;
  std::vector<int> support;
  std::vector<double> weights;
};

SortedSignature sorted_signature(const WaveletMatrix& psi, int node);

/// Minimum total pairwise discrepancy between two equal-length value lists,
/// evaluated on their sorted forms: sum_i |x_i - y_i|. Linear time.
double mdpa(const SortedSignature& x, const SortedSignature& y);

/// Reference implementation: minimum of sum_i |x_i - y_{sigma(i)}| over all
/// permutations sigma. Factorial time, capped at 8 elements.
double mdpa_bruteforce_oracle(const std::vector<double>& x,
                              const std::vector<double>& y);

/// e^{-mdpa(Psi_i, Psi_j)} over sorted wavelet columns. Symmetric, equals 1
/// on the diagonal, always in (0, 1].
double topological_similarity(const WaveletMatrix& psi, int i, int j);

/// Transition weights proportional to topological similarity, normalized
/// over the k-hop neighborhood of v.
TransitionWeights similarity_transition(const Graph& g,
                                        const WaveletMatrix& psi, int v,
                                        int k);

/// Transition weights proportional to smoothed node degree 1 + deg (degrees
/// taken in the full graph), normalized over the k-hop neighborhood of v.
TransitionWeights influence_transition(const Graph& g, int v, int k);

}  // namespace wavechar
