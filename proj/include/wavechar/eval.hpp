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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wavechar/embedding.hpp"
#include "wavechar/graph.hpp"
#include "wavechar/matrix.hpp"

namespace wavechar {

/// Classification-evaluation settings. l2_strength follows the convention
/// where the penalty weight is 1/l2_strength, so larger values regularize
/// less.
struct EvalConfig {
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  double test_ratio = 0.2;
  double l2_strength = 1.0;
  // Headroom above the ~1300 iterations observed on label-noise fits over
  // wide, strongly correlated embedding matrices.
  int max_iterations = 5000;
  double tolerance = 1e-6;

  void validate() const;
};

struct EvalReport {
  std::vector<double> per_seed_auc;  // parallel to config.seeds
  double mean_auc = 0.0;
  double stderr_auc = 0.0;  // sample stddev / sqrt(#seeds)
  std::vector<std::string> notes;  // e.g. degenerate splits that were redrawn
};

/// Deterministic shuffle split. The permutation comes from a Fisher-Yates
/// pass driven by std::mt19937_64 raw outputs reduced modulo the remaining
/// range; both halves are returned sorted ascending. Test size is
/// round(n * test_ratio) clamped to [1, n-1].
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> train_test_split(
    std::size_t n, double test_ratio, std::uint64_t seed);

/// L2-regularized logistic-regression fit. Weights are reported on the
/// original feature scale; `final_grad_norm` is the max-norm, at the
/// solution, of the gradient of the minimized objective
///   mean log-loss + ||w_std||^2 / (2 * l2_strength * n)
/// where w_std are the weights of the internally standardized problem
/// (train-set mean/stddev; intercept unpenalized).
struct LogisticModel {
  std::vector<double> weights;
  double intercept = 0.0;
  int iterations = 0;
  double final_grad_norm = 0.0;
};

/// Deterministic full-batch quasi-Newton fit (L-BFGS with backtracking) of
/// the convex objective documented on LogisticModel. Standardization is
/// internal: the returned weights and intercept act on raw features and
/// produce exactly the scores of the standardized solution. Throws
/// InputError when y has a single class and NumericError when the gradient
/// norm has not reached config.tolerance within config.max_iterations.
LogisticModel fit_logistic_regression(const Matrix& X,
                                      const std::vector<int>& y,
                                      const EvalConfig& config);

/// sigmoid(w . x + b) per row.
std::vector<double> predict_scores(const LogisticModel& model,
                                   const Matrix& X);

/// Area under the ROC curve by the Mann-Whitney statistic with average-rank
/// tie handling: P(score+ > score-) + P(score+ = score-) / 2.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

/// The repeated-holdout protocol: for each seed, split, fit on the train
/// rows, score the test rows, take the AUC; report per-seed values with
/// mean and standard error. A split leaving either side single-class is
/// redrawn from a sub-seed derived from the original (at most 5 redraws,
/// recorded in notes). `threads` caps the worker count (0 = hardware).
EvalReport evaluate(const Matrix& embeddings, const std::vector<int>& labels,
                    const EvalConfig& config, int threads = 0);

/// One-at-a-time parameter sweep: each grid entry re-embeds the collection
/// with that single parameter changed from `base` and evaluates it.
struct SensitivityGrid {
  std::vector<int> k_max;
  std::vector<int> d;
  std::vector<double> tau;
  std::vector<double> t_max;

  bool empty() const {
    return k_max.empty() && d.empty() && tau.empty() && t_max.empty();
  }
};

struct SensitivityRow {
  std::string param;
  double value = 0.0;
  double mean_auc = 0.0;
  double stderr_auc = 0.0;
};

/// Rows appear in a fixed order: k_max sweep, then d, tau, t_max, each with
/// values in grid order and all other parameters at `base`.
std::vector<SensitivityRow> sensitivity_sweep(
    const std::vector<std::pair<Graph, AttributeMatrix>>& items,
    const std::vector<int>& labels, const EmbeddingParams& base,
    const SensitivityGrid& grid, const EvalConfig& config,
    const EmbedOptions& embed_options = {});

/// Serializes sweep rows as `param,value,mean_auc,stderr` CSV.
std::string sensitivity_csv(const std::vector<SensitivityRow>& rows);

}  // namespace wavechar
