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
#include "wavechar/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "wavechar/dataset.hpp"
#include "wavechar/embedding.hpp"
#include "wavechar/errors.hpp"
#include "wavechar/eval.hpp"

namespace wavechar {
namespace {

// Stderr progress reporter, throttled so large datasets log a handful of
// lines instead of one per graph.
class ProgressLogger {
 public:
  void operator()(std::size_t done, std::size_t total) {
    const auto now = std::chrono::steady_clock::now();
    if (done != total && now - last_ < std::chrono::seconds(2)) return;
    last_ = now;
    std::cerr << "embedded " << done << "/" << total << " graphs\n";
  }

 private:
  std::chrono::steady_clock::time_point last_ =
      std::chrono::steady_clock::now();
};

struct PipelineFlags {
  std::string input;
  std::string output;
  EmbeddingParams params;
  int threads = 0;
  bool skip_bad_graphs = false;
};

void add_param_flags(CLI::App* cmd, EmbeddingParams& params) {
  cmd->add_option("--kmax", params.k_max, "largest neighborhood radius")
      ->capture_default_str();
  cmd->add_option("--d", params.d, "characteristic-function samples per feature")
      ->capture_default_str();
  cmd->add_option("--tau", params.tau, "heat kernel scale")
      ->capture_default_str();
  cmd->add_option("--tmax", params.t_max, "largest evaluation point")
      ->capture_default_str();
}

void add_worker_flags(CLI::App* cmd, PipelineFlags& flags) {
  cmd->add_option("--threads", flags.threads,
                  "worker threads (0 = all hardware threads)")
      ->capture_default_str();
  cmd->add_flag("--skip-bad-graphs", flags.skip_bad_graphs,
                "drop graphs that fail to embed instead of aborting");
}

void add_eval_flags(CLI::App* cmd, EvalConfig& config, bool& per_seed) {
  cmd->add_option("--seeds", config.seeds, "split seeds (comma separated)")
      ->delimiter(',');
  cmd->add_option("--test-ratio", config.test_ratio,
                  "held-out fraction per split")
      ->capture_default_str();
  cmd->add_flag("--per-seed", per_seed, "also print per-seed AUC rows");
}

EmbedOptions embed_options(const PipelineFlags& flags,
                           const std::vector<std::string>& ids,
                           ProgressLogger& progress) {
  EmbedOptions options;
  options.threads = flags.threads;
  options.skip_bad_graphs = flags.skip_bad_graphs;
  options.ids = ids;
  options.progress = std::ref(progress);
  return options;
}

void log_skipped(const CollectionEmbedding& result) {
  for (const auto& [index, reason] : result.skipped)
    std::cerr << "skipped " << reason << "\n";
}

void print_report(const EvalReport& report, const EvalConfig& config,
                  bool per_seed) {
  for (const std::string& note : report.notes) std::cerr << note << "\n";
  std::printf("%.6f ± %.6f\n", report.mean_auc, report.stderr_auc);
  if (per_seed) {
    std::printf("seed,auc\n");
    for (std::size_t i = 0; i < report.per_seed_auc.size(); ++i)
      std::printf("%llu,%.6f\n",
                  static_cast<unsigned long long>(config.seeds[i]),
                  report.per_seed_auc[i]);
  }
  std::fflush(stdout);
}

int cmd_embed(const PipelineFlags& flags) {
  const GraphCollection collection = load_dataset(flags.input);
  std::cerr << "loaded " << collection.size() << " graphs ("
            << collection.labels.size() << " labeled) from " << flags.input
            << "\n";

  ProgressLogger progress;
  const CollectionEmbedding result =
      embed_collection(collection_items(collection), flags.params,
                       embed_options(flags, collection.ids, progress));
  log_skipped(result);

  std::vector<std::string> kept_ids;
  kept_ids.reserve(result.kept.size());
  for (std::size_t index : result.kept)
    kept_ids.push_back(collection.ids[index]);
  write_embeddings(flags.output, kept_ids, result.embeddings);
  std::cerr << "wrote " << result.embeddings.rows << " x "
            << result.embeddings.cols << " embeddings to " << flags.output
            << "\n";
  return 0;
}

int cmd_evaluate(const std::string& embeddings_path,
                 const std::string& target_path, const EvalConfig& config,
                 int threads, bool per_seed) {
  const auto [ids, matrix] = read_embeddings(embeddings_path);
  std::unordered_map<std::string, std::size_t> row_of;
  for (std::size_t r = 0; r < ids.size(); ++r)
    if (!row_of.emplace(ids[r], r).second)
      throw InputError(embeddings_path + ": duplicate id '" + ids[r] + "'");

  const auto targets = read_target_csv(target_path);
  if (targets.empty())
    throw InputError(target_path + ": no labeled ids");

  Matrix X(targets.size(), matrix.cols);
  std::vector<int> labels(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto it = row_of.find(targets[i].first);
    if (it == row_of.end())
      throw InputError(target_path + ": id '" + targets[i].first +
                       "' has no row in " + embeddings_path);
    std::copy(matrix.row(it->second), matrix.row(it->second) + matrix.cols,
              X.row(i));
    labels[i] = targets[i].second;
  }
  if (X.rows < matrix.rows)
    std::cerr << "evaluating " << X.rows << " labeled rows of " << matrix.rows
              << "\n";

  const EvalReport report = evaluate(X, labels, config, threads);
  print_report(report, config, per_seed);
  return 0;
}

int cmd_run(const PipelineFlags& flags, const EvalConfig& config,
            bool per_seed) {
  const GraphCollection collection = load_dataset(flags.input);
  const LabeledSubset labeled = labeled_subset(collection);
  std::cerr << "loaded " << collection.size() << " graphs ("
            << labeled.ids.size() << " labeled) from " << flags.input << "\n";
  if (labeled.ids.empty())
    throw InputError(flags.input + ": dataset has no target.csv labels");

  ProgressLogger progress;
  const CollectionEmbedding result = embed_collection(
      labeled.items, flags.params, embed_options(flags, labeled.ids, progress));
  log_skipped(result);

  if (!flags.output.empty()) {
    std::vector<std::string> kept_ids;
    kept_ids.reserve(result.kept.size());
    for (std::size_t index : result.kept)
      kept_ids.push_back(labeled.ids[index]);
    write_embeddings(flags.output, kept_ids, result.embeddings);
    std::cerr << "wrote " << result.embeddings.rows << " x "
              << result.embeddings.cols << " embeddings to " << flags.output
              << "\n";
  }

  std::vector<int> labels;
  labels.reserve(result.kept.size());
  for (std::size_t index : result.kept) labels.push_back(labeled.labels[index]);

  const EvalReport report =
      evaluate(result.embeddings, labels, config, flags.threads);
  print_report(report, config, per_seed);
  return 0;
}

int cmd_sensitivity(const PipelineFlags& flags, const EvalConfig& config,
                    const SensitivityGrid& grid) {
  const GraphCollection collection = load_dataset(flags.input);
  const LabeledSubset labeled = labeled_subset(collection);
  std::cerr << "loaded " << collection.size() << " graphs ("
            << labeled.ids.size() << " labeled) from " << flags.input << "\n";
  if (labeled.ids.empty())
    throw InputError(flags.input + ": dataset has no target.csv labels");

  ProgressLogger progress;
  const std::vector<SensitivityRow> rows =
      sensitivity_sweep(labeled.items, labeled.labels, flags.params, grid,
                        config, embed_options(flags, labeled.ids, progress));
  const std::string csv = sensitivity_csv(rows);

  if (flags.output.empty()) {
    std::fputs(csv.c_str(), stdout);
    std::fflush(stdout);
  } else {
    std::ofstream out(flags.output, std::ios::binary);
    if (!out) throw InputError("cannot open " + flags.output + " for writing");
    out << csv;
    out.flush();
    if (!out) throw InputError("failed writing " + flags.output);
    std::cerr << "wrote " << rows.size() << " sweep rows to " << flags.output
              << "\n";
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"whole-graph embeddings from heat-diffusion wavelets"};
  app.require_subcommand(1);

  PipelineFlags embed_flags;
  CLI::App* embed_cmd =
      app.add_subcommand("embed", "embed a dataset directory to CSV");
  embed_cmd->add_option("--input", embed_flags.input, "dataset directory")
      ->required();
  embed_cmd->add_option("--output", embed_flags.output, "embedding CSV path")
      ->required();
  add_param_flags(embed_cmd, embed_flags.params);
  add_worker_flags(embed_cmd, embed_flags);

  std::string eval_embeddings, eval_target;
  EvalConfig eval_config;
  int eval_threads = 0;
  bool eval_per_seed = false;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "score stored embeddings against labels");
  eval_cmd->add_option("--embeddings", eval_embeddings, "embedding CSV path")
      ->required();
  eval_cmd->add_option("--target", eval_target, "id,target CSV path")
      ->required();
  add_eval_flags(eval_cmd, eval_config, eval_per_seed);
  eval_cmd->add_option("--threads", eval_threads,
                       "worker threads (0 = all hardware threads)")
      ->capture_default_str();

  PipelineFlags run_flags;
  EvalConfig run_config;
  bool run_per_seed = false;
  CLI::App* run_cmd =
      app.add_subcommand("run", "embed labeled graphs and evaluate in one go");
  run_cmd->add_option("--input", run_flags.input, "dataset directory")
      ->required();
  run_cmd->add_option("--output", run_flags.output,
                      "also write the labeled embeddings here");
  add_param_flags(run_cmd, run_flags.params);
  add_worker_flags(run_cmd, run_flags);
  add_eval_flags(run_cmd, run_config, run_per_seed);

  PipelineFlags sweep_flags;
  EvalConfig sweep_config;
  SensitivityGrid grid;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sensitivity", "one-at-a-time parameter sweep, CSV output");
  sweep_cmd->add_option("--input", sweep_flags.input, "dataset directory")
      ->required();
  sweep_cmd->add_option("--output", sweep_flags.output,
                        "sweep CSV path (default: stdout)");
  add_param_flags(sweep_cmd, sweep_flags.params);
  add_worker_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--seeds", sweep_config.seeds,
                        "split seeds (comma separated)")
      ->delimiter(',');
  sweep_cmd->add_option("--test-ratio", sweep_config.test_ratio,
                        "held-out fraction per split")
      ->capture_default_str();
  sweep_cmd->add_option("--grid-kmax", grid.k_max, "k_max sweep values")
      ->delimiter(',');
  sweep_cmd->add_option("--grid-d", grid.d, "d sweep values")->delimiter(',');
  sweep_cmd->add_option("--grid-tau", grid.tau, "tau sweep values")
      ->delimiter(',');
  sweep_cmd->add_option("--grid-tmax", grid.t_max, "t_max sweep values")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : 1;
  }

  try {
    if (embed_cmd->parsed()) return cmd_embed(embed_flags);
    if (eval_cmd->parsed())
      return cmd_evaluate(eval_embeddings, eval_target, eval_config,
                          eval_threads, eval_per_seed);
    if (run_cmd->parsed()) return cmd_run(run_flags, run_config, run_per_seed);
    if (sweep_cmd->parsed())
      return cmd_sensitivity(sweep_flags, sweep_config, grid);
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace wavechar
