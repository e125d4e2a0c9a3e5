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
#include "wavechar/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "wavechar/errors.hpp"

namespace wavechar {

SortedSignature sorted_signature(const WaveletMatrix& psi, int node) {
  if (node < 0 || static_cast<std::size_t>(node) >= psi.order)
    throw InputError("sorted_signature: node " + std::to_string(node) +
                     " out of range");
  SortedSignature sig;
  sig.node = node;
  const double* col = psi.column(static_cast<std::size_t>(node));
  sig.values.assign(col, col + psi.order);
  std::sort(sig.values.begin(), sig.values.end());
  return sig;
}

double mdpa(const SortedSignature& x, const SortedSignature& y) {
  if (x.values.size() != y.values.size())
    throw InputError("mdpa: signature length mismatch (" +
                     std::to_string(x.values.size()) + " vs " +
                     std::to_string(y.values.size()) + ")");
  double total = 0.0;
  for (std::size_t i = 0; i < x.values.size(); ++i)
    total += std::abs(x.values[i] - y.values[i]);
  return total;
}

double mdpa_bruteforce_oracle(const std::vector<double>& x,
                              const std::vector<double>& y) {
  if (x.size() != y.size())
    throw InputError("mdpa_bruteforce_oracle: length mismatch");
  if (x.size() > 8)
    throw InputError("mdpa_bruteforce_oracle: list longer than 8 elements");
  std::vector<std::size_t> perm(x.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      total += std::abs(x[i] - y[perm[i]]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double topological_similarity(const WaveletMatrix& psi, int i, int j) {
  return std::exp(-mdpa(sorted_signature(psi, i), sorted_signature(psi, j)));
}

TransitionWeights similarity_transition(const Graph& g,
                                        const WaveletMatrix& psi, int v,
                                        int k) {
  if (psi.order != static_cast<std::size_t>(g.num_nodes()))
    throw InputError("similarity_transition: wavelet order does not match graph");
  TransitionWeights t;
  t.source = v;
  t.hops = k;
  t.support = k_hop_neighborhood(g, v, k);

  const SortedSignature sig_v = sorted_signature(psi, v);
  t.weights.resize(t.support.size());
  double denom = 0.0;
  for (std::size_t i = 0; i < t.support.size(); ++i) {
    const double s =
        std::exp(-mdpa(sig_v, sorted_signature(psi, t.support[i])));
    t.weights[i] = s;
    denom += s;
  }
  // denom >= s(v,v) = 1, so the division is always safe.
  for (double& w : t.weights) w /= denom;
  return t;
}

TransitionWeights influence_transition(const Graph& g, int v, int k) {
  TransitionWeights t;
  t.source = v;
  t.hops = k;
  t.support = k_hop_neighborhood(g, v, k);

  t.weights.resize(t.support.size());
  double denom = 0.0;
  for (std::size_t i = 0; i < t.support.size(); ++i) {
    const double influence = 1.0 + static_cast<double>(g.degree(t.support[i]));
    t.weights[i] = influence;
    denom += influence;
  }
  for (double& w : t.weights) w /= denom;
  return t;
}

}  // namespace wavechar
