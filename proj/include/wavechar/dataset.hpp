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

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wavechar/graph.hpp"
#include "wavechar/matrix.hpp"

namespace wavechar {

/// A collection of graphs loaded from disk, in file order. Labels and node
/// attributes are optional; when attributes are present they cover every
/// graph with one consistent feature count.
struct GraphCollection {
  std::vector<std::string> ids;  // unique, in graphs.json order
  std::vector<Graph> graphs;     // parallel to ids
  std::unordered_map<std::string, int> labels;            // id -> {0,1}
  std::unordered_map<std::string, AttributeMatrix> attributes;

  std::size_t size() const { return ids.size(); }
  bool has_labels() const { return !labels.empty(); }
  bool has_attributes() const { return !attributes.empty(); }
};

/// Loads a dataset directory:
///   graphs.json   (required) object: graph-id -> array of [u, v] pairs;
///                 node count is 1 + max node id, so trailing isolated
///                 nodes are representable
///   target.csv    (optional) header `id,target`, target in {0,1}
///   features.json (optional) graph-id -> node-indexed array of m-vectors;
///                 must cover every graph with a consistent m
/// Malformed content raises InputError naming the file and key.
GraphCollection load_dataset(const std::string& directory);

/// All graphs paired with their attribute matrices, in collection order.
/// Graphs without stored attributes get structural_features.
std::vector<std::pair<Graph, AttributeMatrix>> collection_items(
    const GraphCollection& collection);

/// The labeled graphs of a collection, in collection order.
struct LabeledSubset {
  std::vector<std::string> ids;
  std::vector<std::pair<Graph, AttributeMatrix>> items;
  std::vector<int> labels;
};

LabeledSubset labeled_subset(const GraphCollection& collection);

/// Reads an `id,target` CSV (header required) into (id, label) pairs in
/// file order. Labels must be 0 or 1 and ids unique; violations raise
/// InputError with the line number.
std::vector<std::pair<std::string, int>> read_target_csv(
    const std::string& path);

/// Writes `id,x0,x1,...` CSV with one row per id. Floats are serialized
/// with 17 significant digits so read_embeddings restores them exactly.
void write_embeddings(const std::string& path,
                      const std::vector<std::string>& ids,
                      const Matrix& embeddings);

/// Inverse of write_embeddings. Raises InputError with a line number on
/// ragged rows, non-numeric cells, a bad header, or an empty data section.
std::pair<std::vector<std::string>, Matrix> read_embeddings(
    const std::string& path);

}  // namespace wavechar
