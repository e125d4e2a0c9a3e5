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
#include "wavechar/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <deque>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_set>

#include "wavechar/errors.hpp"

namespace wavechar {

void EvalConfig::validate() const {
  if (seeds.empty()) throw InputError("eval config: seeds must be nonempty");
  std::unordered_set<std::uint64_t> distinct(seeds.begin(), seeds.end());
  if (distinct.size() != seeds.size())
    throw InputError("eval config: seeds must be distinct");
  if (!(test_ratio > 0.0 && test_ratio < 1.0))
    throw InputError("eval config: test_ratio must be in (0, 1)");
  if (!(l2_strength > 0.0))
    throw InputError("eval config: l2_strength must be > 0");
  if (max_iterations < 1)
    throw InputError("eval config: max_iterations must be >= 1");
  if (!(tolerance > 0.0))
    throw InputError("eval config: tolerance must be > 0");
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> train_test_split(
    std::size_t n, double test_ratio, std::uint64_t seed) {
  if (n < 2) throw InputError("train_test_split: need at least 2 examples");
  if (!(test_ratio > 0.0 && test_ratio < 1.0))
    throw InputError("train_test_split: test_ratio must be in (0, 1)");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(perm[i], perm[j]);
  }

  std::size_t test_size =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_ratio));
  test_size = std::max<std::size_t>(1, std::min(test_size, n - 1));

  std::vector<std::size_t> test(perm.begin(), perm.begin() + test_size);
  std::vector<std::size_t> train(perm.begin() + test_size, perm.end());
  std::sort(test.begin(), test.end());
  std::sort(train.begin(), train.end());
  return {std::move(train), std::move(test)};
}

namespace {

double sigmoid(double a) {
  if (a >= 0.0) return 1.0 / (1.0 + std::exp(-a));
  const double e = std::exp(a);
  return e / (1.0 + e);
}

double softplus(double a) {
  return a > 0.0 ? a + std::log1p(std::exp(-a)) : std::log1p(std::exp(a));
}

// Fits on a row subset of X without materializing the submatrix, so
// evaluating large embedding matrices never copies them per seed.
//
// The minimized objective lives on standardized features x_std = (x-mu)/sigma
// (train-set mean and stddev, sigma 1 where constant):
//   J(w, b) = mean_i softplus(-y_i (w . x_std_i + b)) + ||w||^2 / (2 C n).
// Penalizing the standardized weights keeps the Hessian spectrum tight
// (penalizing original-scale weights puts a 1/sigma_j^2 spike on every
// near-constant column and stalls any first-order or quasi-Newton method).
// The reported model is mapped back to the raw feature scale, which changes
// the scores not at all; final_grad_norm is the max-norm of grad J at the
// solution.
LogisticModel fit_on_rows(const Matrix& X, const std::vector<int>& y,
                          const std::vector<std::size_t>& rows,
                          const EvalConfig& config) {
  const std::size_t n = rows.size();
  const std::size_t p = X.cols;
  if (n < 2) throw InputError("logistic regression: need at least 2 examples");

  std::vector<double> target(n);  // +1 / -1
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = y[rows[i]];
    if (label != 0 && label != 1)
      throw InputError("logistic regression: labels must be 0 or 1");
    target[i] = label == 1 ? 1.0 : -1.0;
    positives += static_cast<std::size_t>(label);
  }
  if (positives == 0 || positives == n)
    throw InputError("logistic regression: training labels are single-class");

  for (std::size_t i = 0; i < n; ++i) {
    const double* row = X.row(rows[i]);
    for (std::size_t j = 0; j < p; ++j)
      if (!std::isfinite(row[j]))
        throw InputError("logistic regression: non-finite feature value");
  }

  std::vector<double> mu(p, 0.0), sigma(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = X.row(rows[i]);
    for (std::size_t j = 0; j < p; ++j) mu[j] += row[j];
  }
  for (std::size_t j = 0; j < p; ++j) mu[j] /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = X.row(rows[i]);
    for (std::size_t j = 0; j < p; ++j) {
      const double dxy = row[j] - mu[j];
      sigma[j] += dxy * dxy;
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    sigma[j] = std::sqrt(sigma[j] / static_cast<double>(n));
    if (sigma[j] == 0.0) sigma[j] = 1.0;
  }

  const double penalty_scale =
      1.0 / (config.l2_strength * static_cast<double>(n));
  const double inv_n = 1.0 / static_cast<double>(n);

  // theta = (w_tilde[0..p), b_tilde); z holds the linear scores of the most
  // recent objective evaluation.
  std::vector<double> theta(p + 1, 0.0), z(n), v(p);

  // Standardized values are formed as (x - mu) / sigma inside the loops.
  // Folding the centering into the intercept instead (z = c + x . v with
  // c = b - mu . v) is algebraically the same but cancels catastrophically
  // on near-constant columns, where |mu . v| dwarfs the standardized value.
  auto objective = [&](const std::vector<double>& th) {
    for (std::size_t j = 0; j < p; ++j) v[j] = th[j] / sigma[j];
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = X.row(rows[i]);
      double dot = th[p];
      for (std::size_t j = 0; j < p; ++j) dot += (row[j] - mu[j]) * v[j];
      z[i] = dot;
      loss += softplus(-target[i] * dot);
    }
    double penalty = 0.0;
    for (std::size_t j = 0; j < p; ++j) penalty += th[j] * th[j];
    return loss * inv_n + 0.5 * penalty * penalty_scale;
  };

  // Gradient at the point z was last evaluated at; returns its max-norm.
  auto gradient = [&](const std::vector<double>& th, std::vector<double>& g) {
    std::fill(g.begin(), g.end(), 0.0);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = -target[i] * sigmoid(-target[i] * z[i]);
      const double* row = X.row(rows[i]);
      for (std::size_t j = 0; j < p; ++j) g[j] += r * (row[j] - mu[j]);
      s += r;
    }
    double norm = std::abs(s * inv_n);
    for (std::size_t j = 0; j < p; ++j) {
      g[j] = g[j] / sigma[j] * inv_n + th[j] * penalty_scale;
      norm = std::max(norm, std::abs(g[j]));
    }
    g[p] = s * inv_n;
    return norm;
  };

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> history;
  const std::size_t memory = 10;

  std::vector<double> grad(p + 1), direction(p + 1), trial(p + 1);
  double loss = objective(theta);
  double orig_norm = gradient(theta, grad);

  LogisticModel model;
  bool converged = orig_norm <= config.tolerance;
  int iter = 0;
  while (!converged && iter < config.max_iterations) {
    // Two-loop recursion for d = -H * grad.
    direction = grad;
    std::vector<double> alpha(history.size());
    for (std::size_t h = history.size(); h-- > 0;) {
      const Pair& pr = history[h];
      double a = 0.0;
      for (std::size_t j = 0; j <= p; ++j) a += pr.s[j] * direction[j];
      a *= pr.rho;
      alpha[h] = a;
      for (std::size_t j = 0; j <= p; ++j) direction[j] -= a * pr.y[j];
    }
    if (!history.empty()) {
      const Pair& last = history.back();
      double sy = 0.0, yy = 0.0;
      for (std::size_t j = 0; j <= p; ++j) {
        sy += last.s[j] * last.y[j];
        yy += last.y[j] * last.y[j];
      }
      const double gamma = sy / yy;
      for (std::size_t j = 0; j <= p; ++j) direction[j] *= gamma;
    }
    for (std::size_t h = 0; h < history.size(); ++h) {
      const Pair& pr = history[h];
      double b = 0.0;
      for (std::size_t j = 0; j <= p; ++j) b += pr.y[j] * direction[j];
      b *= pr.rho;
      for (std::size_t j = 0; j <= p; ++j)
        direction[j] += (alpha[h] - b) * pr.s[j];
    }
    for (std::size_t j = 0; j <= p; ++j) direction[j] = -direction[j];

    double descent = 0.0;
    for (std::size_t j = 0; j <= p; ++j) descent += direction[j] * grad[j];
    if (descent >= 0.0) {  // curvature gone bad; restart from steepest descent
      history.clear();
      descent = 0.0;
      for (std::size_t j = 0; j <= p; ++j) {
        direction[j] = -grad[j];
        descent -= grad[j] * grad[j];
      }
    }

    // Armijo backtracking.
    double step = 1.0;
    double trial_loss = 0.0;
    bool accepted = false;
    for (int back = 0; back < 60; ++back) {
      for (std::size_t j = 0; j <= p; ++j)
        trial[j] = theta[j] + step * direction[j];
      trial_loss = objective(trial);
      if (trial_loss <= loss + 1e-4 * step * descent) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      throw NumericError(
          "logistic regression: line search stalled at gradient norm " +
          std::to_string(orig_norm));

    std::vector<double> new_grad(p + 1);
    const double new_norm = gradient(trial, new_grad);

    Pair pr;
    pr.s.resize(p + 1);
    pr.y.resize(p + 1);
    double sy = 0.0;
    for (std::size_t j = 0; j <= p; ++j) {
      pr.s[j] = trial[j] - theta[j];
      pr.y[j] = new_grad[j] - grad[j];
      sy += pr.s[j] * pr.y[j];
    }
    if (sy > 1e-12) {
      pr.rho = 1.0 / sy;
      history.push_back(std::move(pr));
      if (history.size() > memory) history.pop_front();
    }

    theta.swap(trial);
    grad.swap(new_grad);
    loss = trial_loss;
    orig_norm = new_norm;
    ++iter;
    converged = orig_norm <= config.tolerance;
  }

  if (!converged)
    throw NumericError("logistic regression: gradient norm " +
                       std::to_string(orig_norm) + " above tolerance after " +
                       std::to_string(iter) + " iterations");

  model.weights.resize(p);
  double intercept = theta[p];
  for (std::size_t j = 0; j < p; ++j) {
    model.weights[j] = theta[j] / sigma[j];
    intercept -= mu[j] * model.weights[j];
  }
  model.intercept = intercept;
  model.iterations = iter;
  model.final_grad_norm = orig_norm;
  return model;
}

std::vector<double> scores_on_rows(const LogisticModel& model, const Matrix& X,
                                   const std::vector<std::size_t>& rows) {
  if (model.weights.size() != X.cols)
    throw InputError("predict: model has " +
                     std::to_string(model.weights.size()) +
                     " weights but matrix has " + std::to_string(X.cols) +
                     " columns");
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double* row = X.row(rows[i]);
    double dot = model.intercept;
    for (std::size_t j = 0; j < X.cols; ++j) dot += row[j] * model.weights[j];
    out[i] = sigmoid(dot);
  }
  return out;
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return rows;
}

bool both_classes(const std::vector<int>& labels,
                  const std::vector<std::size_t>& rows) {
  bool zero = false, one = false;
  for (std::size_t r : rows) {
    if (labels[r] == 1)
      one = true;
    else
      zero = true;
    if (zero && one) return true;
  }
  return false;
}

void format_shortest(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

}  // namespace

LogisticModel fit_logistic_regression(const Matrix& X,
                                      const std::vector<int>& y,
                                      const EvalConfig& config) {
  config.validate();
  if (y.size() != X.rows)
    throw InputError("logistic regression: " + std::to_string(y.size()) +
                     " labels for " + std::to_string(X.rows) + " rows");
  return fit_on_rows(X, y, all_rows(X.rows), config);
}

std::vector<double> predict_scores(const LogisticModel& model,
                                   const Matrix& X) {
  return scores_on_rows(model, X, all_rows(X.rows));
}

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size())
    throw InputError("auc: " + std::to_string(scores.size()) +
                     " scores for " + std::to_string(labels.size()) +
                     " labels");
  const std::size_t n = scores.size();
  std::size_t positives = 0;
  for (int label : labels) {
    if (label != 0 && label != 1)
      throw InputError("auc: labels must be 0 or 1");
    positives += static_cast<std::size_t>(label);
  }
  if (positives == 0 || positives == n)
    throw InputError("auc: both classes must be present");
  for (double s : scores)
    if (std::isnan(s)) throw InputError("auc: NaN score");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // Rank-sum form of the Mann-Whitney statistic; tied scores share the
  // average of the ranks they occupy, which counts each tied pair as 1/2.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (std::size_t r = i; r < j; ++r)
      if (labels[order[r]] == 1) positive_rank_sum += avg_rank;
    i = j;
  }

  const double np = static_cast<double>(positives);
  const double nn = static_cast<double>(n - positives);
  return (positive_rank_sum - np * (np + 1.0) * 0.5) / (np * nn);
}

EvalReport evaluate(const Matrix& embeddings, const std::vector<int>& labels,
                    const EvalConfig& config, int threads) {
  config.validate();
  if (labels.size() != embeddings.rows)
    throw InputError("evaluate: " + std::to_string(labels.size()) +
                     " labels for " + std::to_string(embeddings.rows) +
                     " rows");
  if (embeddings.rows < 2)
    throw InputError("evaluate: need at least 2 examples");
  if (!both_classes(labels, all_rows(labels.size())))
    throw InputError("evaluate: both classes must be present");

  const std::size_t num_seeds = config.seeds.size();
  EvalReport report;
  report.per_seed_auc.resize(num_seeds);
  std::vector<std::vector<std::string>> notes(num_seeds);
  std::vector<std::pair<std::size_t, std::string>> failures;  // seed idx, what

  std::mutex failures_mutex;
  std::atomic<std::size_t> next{0};

  auto run_seed = [&](std::size_t idx) {
    const std::uint64_t seed = config.seeds[idx];
    std::vector<std::size_t> train, test;
    std::uint64_t draw_seed = seed;
    for (int attempt = 0;; ++attempt) {
      std::tie(train, test) =
          train_test_split(labels.size(), config.test_ratio, draw_seed);
      if (both_classes(labels, train) && both_classes(labels, test)) break;
      if (attempt == 5)
        throw InputError("evaluate: seed " + std::to_string(seed) +
                         ": no split with both classes on each side after "
                         "5 redraws");
      // Knuth multiplicative-hash stride keeps redraw seeds disjoint from
      // the caller's seed list in practice.
      draw_seed = seed + static_cast<std::uint64_t>(attempt + 1) * 2654435761ULL;
      notes[idx].push_back("seed " + std::to_string(seed) +
                           ": degenerate split, redrawing with sub-seed " +
                           std::to_string(draw_seed));
    }

    const LogisticModel model = fit_on_rows(embeddings, labels, train, config);
    const std::vector<double> scores = scores_on_rows(model, embeddings, test);
    std::vector<int> test_labels(test.size());
    for (std::size_t i = 0; i < test.size(); ++i)
      test_labels[i] = labels[test[i]];
    report.per_seed_auc[idx] = auc(scores, test_labels);
  };

  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= num_seeds) return;
      try {
        run_seed(idx);
      } catch (const NumericError& e) {
        std::lock_guard<std::mutex> lock(failures_mutex);
        failures.emplace_back(idx, std::string("numeric:") + e.what());
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failures_mutex);
        failures.emplace_back(idx, std::string("input:") + e.what());
      }
    }
  };

  unsigned thread_count = threads > 0
                              ? static_cast<unsigned>(threads)
                              : std::max(1u, std::thread::hardware_concurrency());
  thread_count =
      std::min<unsigned>(thread_count, static_cast<unsigned>(num_seeds));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  if (!failures.empty()) {
    std::sort(failures.begin(), failures.end());
    const std::string& what = failures.front().second;
    if (what.rfind("numeric:", 0) == 0) throw NumericError(what.substr(8));
    throw InputError(what.substr(6));
  }

  for (std::size_t idx = 0; idx < num_seeds; ++idx)
    for (std::string& note : notes[idx])
      report.notes.push_back(std::move(note));

  double mean = 0.0;
  for (double a : report.per_seed_auc) mean += a;
  mean /= static_cast<double>(num_seeds);
  report.mean_auc = mean;
  if (num_seeds > 1) {
    double ss = 0.0;
    for (double a : report.per_seed_auc) ss += (a - mean) * (a - mean);
    report.stderr_auc = std::sqrt(ss / static_cast<double>(num_seeds - 1)) /
                        std::sqrt(static_cast<double>(num_seeds));
  }
  return report;
}

std::vector<SensitivityRow> sensitivity_sweep(
    const std::vector<std::pair<Graph, AttributeMatrix>>& items,
    const std::vector<int>& labels, const EmbeddingParams& base,
    const SensitivityGrid& grid, const EvalConfig& config,
    const EmbedOptions& embed_options) {
  if (grid.empty()) throw InputError("sensitivity: empty parameter grid");
  if (labels.size() != items.size())
    throw InputError("sensitivity: " + std::to_string(labels.size()) +
                     " labels for " + std::to_string(items.size()) +
                     " graphs");

  std::vector<SensitivityRow> rows;
  auto run_point = [&](const std::string& param, double value,
                       const EmbeddingParams& params) {
    const CollectionEmbedding emb =
        embed_collection(items, params, embed_options);
    std::vector<int> kept_labels;
    kept_labels.reserve(emb.kept.size());
    for (std::size_t index : emb.kept) kept_labels.push_back(labels[index]);
    const EvalReport report =
        evaluate(emb.embeddings, kept_labels, config, embed_options.threads);
    rows.push_back({param, value, report.mean_auc, report.stderr_auc});
  };

  for (int v : grid.k_max) {
    EmbeddingParams params = base;
    params.k_max = v;
    run_point("k_max", static_cast<double>(v), params);
  }
  for (int v : grid.d) {
    EmbeddingParams params = base;
    params.d = v;
    run_point("d", static_cast<double>(v), params);
  }
  for (double v : grid.tau) {
    EmbeddingParams params = base;
    params.tau = v;
    run_point("tau", v, params);
  }
  for (double v : grid.t_max) {
    EmbeddingParams params = base;
    params.t_max = v;
    run_point("t_max", v, params);
  }
  return rows;
}

std::string sensitivity_csv(const std::vector<SensitivityRow>& rows) {
  std::string out = "param,value,mean_auc,stderr\n";
  for (const SensitivityRow& row : rows) {
    out += row.param;
    out += ',';
    format_shortest(out, row.value);
    out += ',';
    format_shortest(out, row.mean_auc);
    out += ',';
    format_shortest(out, row.stderr_auc);
    out += '\n';
  }
  return out;
}

}  // namespace wavechar
