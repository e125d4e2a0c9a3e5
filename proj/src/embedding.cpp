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
#include "wavechar/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <queue>
#include <string>
#include <thread>

#include "wavechar/errors.hpp"

namespace wavechar {

void EmbeddingParams::validate() const {
  if (k_max < 1) throw InputError("params: k_max must be >= 1");
  if (d < 1) throw InputError("params: d must be >= 1");
  if (!(tau > 0.0)) throw InputError("params: tau must be > 0");
  if (!(t_max > 0.0)) throw InputError("params: t_max must be > 0");
}

std::vector<double> sample_points(int d, double t_max) {
  if (d < 1) throw InputError("sample_points: d must be >= 1");
  if (!(t_max > 0.0)) throw InputError("sample_points: t_max must be > 0");
  std::vector<double> ts(static_cast<std::size_t>(d));
  for (int j = 1; j <= d; ++j)
    ts[static_cast<std::size_t>(j - 1)] = static_cast<double>(j) * t_max / d;
  return ts;
}

ComplexSample node_characteristic(const TransitionWeights& weights,
                                  const AttributeMatrix& attrs, std::size_t p,
                                  double t) {
  if (p >= attrs.num_features)
    throw InputError("node_characteristic: feature index out of range");
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < weights.support.size(); ++i) {
    const std::size_t node = static_cast<std::size_t>(weights.support[i]);
    if (node >= attrs.num_nodes)
      throw InputError("node_characteristic: support node out of range");
    const double angle = t * attrs.at(node, p);
    re += weights.weights[i] * std::cos(angle);
    im += weights.weights[i] * std::sin(angle);
  }
  return {re, im};
}

ComplexSample graph_characteristic(const Graph& g,
                                   std::span<const TransitionWeights> all_weights,
                                   const AttributeMatrix& attrs, std::size_t p,
                                   double t) {
  const std::size_t n = static_cast<std::size_t>(g.num_nodes());
  if (all_weights.size() != n)
    throw InputError("graph_characteristic: need one weight set per node");
  double re = 0.0, im = 0.0;
  for (const TransitionWeights& w : all_weights) {
    const ComplexSample c = node_characteristic(w, attrs, p, t);
    re += c.real();
    im += c.imag();
  }
  return {re / static_cast<double>(n), im / static_cast<double>(n)};
}

namespace {

// Per-graph intermediate state shared by every hop count and both transition
// variants: sorted wavelet signatures, the BFS ball of each node ordered by
// (distance, index) with per-hop prefix offsets, similarities aligned with
// the ball, and smoothed degrees.
struct Workspace {
  int n = 0;
  int k_cap = 0;
  std::vector<std::vector<int>> ball;
  std::vector<std::vector<int>> offsets;      // offsets[v][h] = #nodes at dist <= h
  std::vector<std::vector<double>> sim;       // aligned with ball[v]
  std::vector<double> smoothed_degree;        // 1 + deg, by node
};

Workspace build_workspace(const Graph& g, const WaveletMatrix& psi, int k_cap) {
  const int n = g.num_nodes();
  Workspace ws;
  ws.n = n;
  ws.k_cap = k_cap;

  std::vector<std::vector<double>> signatures(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const double* col = psi.column(static_cast<std::size_t>(v));
    signatures[v].assign(col, col + psi.order);
    std::sort(signatures[v].begin(), signatures[v].end());
  }

  ws.smoothed_degree.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    ws.smoothed_degree[v] = 1.0 + static_cast<double>(g.degree(v));

  ws.ball.resize(n);
  ws.offsets.resize(n);
  ws.sim.resize(n);
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::queue<int> frontier;
  for (int v = 0; v < n; ++v) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[v] = 0;
    frontier.push(v);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      if (dist[u] == k_cap) continue;
      for (int w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          frontier.push(w);
        }
      }
    }

    // Bucket by distance; ascending node index within each bucket.
    std::vector<int> counts(static_cast<std::size_t>(k_cap) + 1, 0);
    for (int u = 0; u < n; ++u)
      if (dist[u] >= 0) ++counts[dist[u]];
    std::vector<int>& offs = ws.offsets[v];
    offs.assign(static_cast<std::size_t>(k_cap) + 1, 0);
    int running = 0;
    for (int h = 0; h <= k_cap; ++h) {
      running += counts[h];
      offs[h] = running;
    }
    std::vector<int>& ball = ws.ball[v];
    ball.resize(static_cast<std::size_t>(running));
    std::vector<int> fill(static_cast<std::size_t>(k_cap) + 1, 0);
    for (int h = 1; h <= k_cap; ++h) fill[h] = offs[h - 1];
    for (int u = 0; u < n; ++u)
      if (dist[u] >= 0) ball[fill[dist[u]]++] = u;

    std::vector<double>& sims = ws.sim[v];
    sims.resize(ball.size());
    const std::vector<double>& sig_v = signatures[v];
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const std::vector<double>& sig_u = signatures[ball[i]];
      double dist_l1 = 0.0;
      for (std::size_t r = 0; r < sig_v.size(); ++r)
        dist_l1 += std::abs(sig_v[r] - sig_u[r]);
      sims[i] = std::exp(-dist_l1);
    }
  }
  return ws;
}

// cos/sin of t_j * a_u^(p), laid out [node][feature][sample][re,im].
std::vector<double> build_phasors(const AttributeMatrix& attrs,
                                  const std::vector<double>& ts) {
  const std::size_t n = attrs.num_nodes;
  const std::size_t m = attrs.num_features;
  const std::size_t d = ts.size();
  std::vector<double> phas(n * m * d * 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t p = 0; p < m; ++p) {
      const double a = attrs.at(u, p);
      double* out = phas.data() + ((u * m + p) * d) * 2;
      for (std::size_t j = 0; j < d; ++j) {
        const double angle = ts[j] * a;
        out[2 * j] = std::cos(angle);
        out[2 * j + 1] = std::sin(angle);
      }
    }
  }
  return phas;
}

// One hop-k block for one variant: aggregate per-node transition weights
// into a total weight per target node, then sample the averaged
// characteristic function. Layout: feature-major, sample-major, Re then Im.
void append_block(const Workspace& ws, const AttributeMatrix& attrs,
                  const std::vector<double>& ts,
                  const std::vector<double>& phasors, int k,
                  TransitionVariant variant, EmbeddingVector& out) {
  const std::size_t n = static_cast<std::size_t>(ws.n);
  const std::size_t m = attrs.num_features;
  const std::size_t d = ts.size();

  std::vector<double> omega(n, 0.0);
  for (std::size_t v = 0; v < n; ++v) {
    const int span = ws.offsets[v][k];
    const std::vector<int>& ball = ws.ball[v];
    double denom = 0.0;
    if (variant == TransitionVariant::Similarity) {
      const std::vector<double>& sims = ws.sim[v];
      for (int i = 0; i < span; ++i) denom += sims[i];
      for (int i = 0; i < span; ++i) omega[ball[i]] += sims[i] / denom;
    } else {
      for (int i = 0; i < span; ++i) denom += ws.smoothed_degree[ball[i]];
      for (int i = 0; i < span; ++i)
        omega[ball[i]] += ws.smoothed_degree[ball[i]] / denom;
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t j = 0; j < d; ++j) {
      double re = 0.0, im = 0.0;
      for (std::size_t u = 0; u < n; ++u) {
        const double* ph = phasors.data() + ((u * m + p) * d + j) * 2;
        re += omega[u] * ph[0];
        im += omega[u] * ph[1];
      }
      out.push_back(re * inv_n);
      out.push_back(im * inv_n);
    }
  }
}

void check_embedding_inputs(const Graph& g, const AttributeMatrix& attrs,
                            const EmbeddingParams& params) {
  params.validate();
  if (g.num_nodes() == 0) throw InputError("embed: graph has no nodes");
  if (attrs.num_nodes != static_cast<std::size_t>(g.num_nodes()))
    throw InputError("embed: attribute rows (" +
                     std::to_string(attrs.num_nodes) +
                     ") do not match node count (" +
                     std::to_string(g.num_nodes()) + ")");
  if (attrs.num_features < 1)
    throw InputError("embed: attribute matrix has no feature columns");
  for (double v : attrs.values)
    if (!std::isfinite(v)) throw InputError("embed: non-finite attribute value");
}

}  // namespace

EmbeddingVector k_hop_embedding(const Graph& g, const WaveletMatrix& psi,
                                const AttributeMatrix& attrs, int k,
                                const EmbeddingParams& params,
                                TransitionVariant variant) {
  check_embedding_inputs(g, attrs, params);
  if (k < 1 || k > params.k_max)
    throw InputError("k_hop_embedding: k must be in [1, k_max]");
  if (psi.order != static_cast<std::size_t>(g.num_nodes()))
    throw InputError("k_hop_embedding: wavelet order does not match graph");

  const Workspace ws = build_workspace(g, psi, k);
  const std::vector<double> ts = sample_points(params.d, params.t_max);
  const std::vector<double> phasors = build_phasors(attrs, ts);
  EmbeddingVector out;
  out.reserve(2 * attrs.num_features * ts.size());
  append_block(ws, attrs, ts, phasors, k, variant, out);
  return out;
}

EmbeddingVector embed_graph(const Graph& g, const AttributeMatrix& attrs,
                            const EmbeddingParams& params) {
  check_embedding_inputs(g, attrs, params);

  const WaveletMatrix psi = heat_wavelets(g, params.tau);
  const Workspace ws = build_workspace(g, psi, params.k_max);
  const std::vector<double> ts = sample_points(params.d, params.t_max);
  const std::vector<double> phasors = build_phasors(attrs, ts);

  EmbeddingVector out;
  out.reserve(params.dimension(attrs.num_features));
  for (TransitionVariant variant :
       {TransitionVariant::Similarity, TransitionVariant::Influence}) {
    for (int k = 1; k <= params.k_max; ++k)
      append_block(ws, attrs, ts, phasors, k, variant, out);
  }
  return out;
}

CollectionEmbedding embed_collection(
    const std::vector<std::pair<Graph, AttributeMatrix>>& items,
    const EmbeddingParams& params, const EmbedOptions& options) {
  params.validate();
  if (items.empty()) throw InputError("embed_collection: empty graph list");

  const std::size_t m = items.front().second.num_features;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].second.num_features != m)
      throw InputError("embed_collection: graph index " + std::to_string(i) +
                       " has " + std::to_string(items[i].second.num_features) +
                       " features, expected " + std::to_string(m));
  }
  const std::size_t dim = params.dimension(m);

  enum class Kind { Input, Numeric };
  struct Failure {
    std::size_t index;
    Kind kind;
    std::string message;
  };

  Matrix result(items.size(), dim);
  std::vector<Failure> failures;
  std::mutex failures_mutex;
  std::mutex progress_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};

  auto describe = [&](std::size_t index) {
    std::string s = "graph index " + std::to_string(index);
    if (index < options.ids.size()) s += " (id '" + options.ids[index] + "')";
    return s;
  };

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        const EmbeddingVector vec =
            embed_graph(items[i].first, items[i].second, params);
        std::copy(vec.begin(), vec.end(), result.row(i));
      } catch (const NumericError& e) {
        std::lock_guard<std::mutex> lock(failures_mutex);
        failures.push_back({i, Kind::Numeric, e.what()});
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failures_mutex);
        failures.push_back({i, Kind::Input, e.what()});
      }
      const std::size_t completed = done.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        options.progress(completed, items.size());
      }
    }
  };

  unsigned thread_count = options.threads > 0
                              ? static_cast<unsigned>(options.threads)
                              : std::max(1u, std::thread::hardware_concurrency());
  thread_count = std::min<unsigned>(thread_count,
                                    static_cast<unsigned>(items.size()));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::sort(failures.begin(), failures.end(),
            [](const Failure& a, const Failure& b) { return a.index < b.index; });
  if (!failures.empty() && !options.skip_bad_graphs) {
    const Failure& first = failures.front();
    const std::string msg = describe(first.index) + ": " + first.message;
    if (first.kind == Kind::Numeric) throw NumericError(msg);
    throw InputError(msg);
  }

  CollectionEmbedding out;
  out.skipped.reserve(failures.size());
  for (const Failure& f : failures)
    out.skipped.emplace_back(f.index, describe(f.index) + ": " + f.message);

  std::size_t write = 0;
  std::size_t next_failure = 0;
  out.kept.reserve(items.size() - failures.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (next_failure < failures.size() && failures[next_failure].index == i) {
      ++next_failure;
      continue;
    }
    if (write != i)
      std::copy(result.row(i), result.row(i) + dim, result.row(write));
    out.kept.push_back(i);
    ++write;
  }
  result.rows = write;
  result.data.resize(write * dim);
  out.embeddings = std::move(result);
  return out;
}

}  // namespace wavechar
