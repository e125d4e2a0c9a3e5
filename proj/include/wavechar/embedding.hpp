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

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wavechar/graph.hpp"
#include "wavechar/matrix.hpp"
#include "wavechar/similarity.hpp"
#include "wavechar/spectral.hpp"

namespace wavechar {

/// Embedding hyperparameters. The final vector has dimension
/// 2 * k_max * m * d * 2 (variant x hop x feature x sample x {Re, Im}).
struct EmbeddingParams {
  int k_max = 5;      // largest neighborhood radius
  int d = 25;         // characteristic-function sample points per feature
  double tau = 0.5;   // heat kernel scale
  double t_max = 2.5; // samples live on (0, t_max]

  void validate() const;
  std::size_t dimension(std::size_t num_features) const {
    return 2 * static_cast<std::size_t>(k_max) * num_features *
           static_cast<std::size_t>(d) * 2;
  }
};

using ComplexSample = std::complex<double>;
using EmbeddingVector = std::vector<double>;

enum class TransitionVariant { Similarity, Influence };

/// The d sample points t_j = j * t_max / d, j = 1..d. Zero is excluded
/// since every characteristic function equals 1 there.
std::vector<double> sample_points(int d, double t_max);

/// Characteristic-function sample of one node's neighborhood feature
/// distribution: sum_j weight_j * e^{i t a_j} over the support, for feature
/// column p.
ComplexSample node_characteristic(const TransitionWeights& weights,
                                  const AttributeMatrix& attrs, std::size_t p,
                                  double t);

/// Average of node_characteristic over all nodes; all_weights must hold one
/// entry per node, in node order.
ComplexSample graph_characteristic(const Graph& g,
                                   std::span<const TransitionWeights> all_weights,
                                   const AttributeMatrix& attrs, std::size_t p,
                                   double t);

/// Embedding block for a single hop count k and transition variant. Layout:
/// feature-major, then sample-major, Re before Im; length 2 * m * d.
EmbeddingVector k_hop_embedding(const Graph& g, const WaveletMatrix& psi,
                                const AttributeMatrix& attrs, int k,
                                const EmbeddingParams& params,
                                TransitionVariant variant);

/// Whole-graph embedding: similarity-variant blocks for k = 1..k_max, then
/// influence-variant blocks, each block laid out as in k_hop_embedding.
/// Deterministic and invariant under node relabeling.
EmbeddingVector embed_graph(const Graph& g, const AttributeMatrix& attrs,
                            const EmbeddingParams& params);

struct EmbedOptions {
  int threads = 0;              // 0 = hardware concurrency
  bool skip_bad_graphs = false; // drop failing graphs instead of aborting
  std::vector<std::string> ids; // optional, used in error messages
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct CollectionEmbedding {
  Matrix embeddings;                // one row per successfully embedded graph
  std::vector<std::size_t> kept;    // kept[r] = input index of row r
  std::vector<std::pair<std::size_t, std::string>> skipped;  // index, reason
};

/// Embeds a batch of graphs, fanning out across threads. Row order follows
/// input order regardless of scheduling. Without skip_bad_graphs the first
/// failing graph (by input index) aborts the batch.
CollectionEmbedding embed_collection(
    const std::vector<std::pair<Graph, AttributeMatrix>>& items,
    const EmbeddingParams& params, const EmbedOptions& options = {});

}  // namespace wavechar
