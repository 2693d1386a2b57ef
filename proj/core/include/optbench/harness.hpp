// Copyright 2026 The optbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef OPTBENCH_HARNESS_HPP
#define OPTBENCH_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "optbench/metrics.hpp"
#include "optbench/objectives.hpp"
#include "optbench/optimizers.hpp"
#include "optbench/tuner.hpp"

namespace optbench {

struct RunSpec {
  TaskSpec task = task_spec(TaskName::kColaLike);
  OptimizerKind optimizer = OptimizerKind::kAdam;
  Regime regime = Regime::kFull;
  std::size_t epochs = 20;
  std::size_t batch_size = 4;
  std::size_t n_splits = 5;
  std::uint64_t master_seed = 0;
  std::size_t trial_budget = kMaxTrials;
  std::size_t dataset_size = 0;  // 0: the task's default size

  std::size_t effective_size() const {
    return dataset_size == 0 ? task.default_size : dataset_size;
  }
};

/// Throws Error(kInvalidConfig) for zero epochs/batch/splits or a trial budget
/// outside [1, 30].
void validate(const RunSpec& run);

struct CurvePoint {
  std::size_t step;
  double loss;                // mini-batch training loss before the update
  std::optional<double> dev;  // set on the last step of each epoch
};

struct LearningCurve {
  std::vector<CurvePoint> points;
};

/// Called after every epoch with (epoch, dev score); returning true stops the
/// trial and marks it pruned.
using EpochHook = std::function<bool(std::size_t epoch, double score)>;
/// Scores a parameter snapshot on the development set. Defaults to the task
/// metric on split.dev.
using DevScorer = std::function<double(const ModelParams&)>;

struct TrainOptions {
  std::size_t epochs = 20;
  std::size_t batch_size = 4;
  std::uint64_t seed = 0;  // weight init and mini-batch order
  EpochHook prune_hook;
  DevScorer dev_scorer;
};

struct TrainResult {
  ModelParams best_params;  // snapshot from the best dev epoch
  TrialRecord record;
  LearningCurve curve;
};

/// Mini-batch training with best-epoch retention. A non-finite loss or update
/// ends the trial with status kFailed and best_dev = -inf.
TrainResult train(const OptimizerConfig& config, const Dataset& data, const DataSplit& split,
                  const TrainOptions& options);

struct StudyOutcome {
  StudyRecord study;
  std::size_t best_index = 0;
  ModelParams best_params;
  LearningCurve best_curve;
};

/// suggest -> train -> record until the budget (1 trial for the defaults
/// regime) is spent, with median pruning. Throws Error(kNoViableTrial) if no
/// trial completes.
StudyOutcome run_study(const RunSpec& run, const Dataset& data, const DataSplit& split);

struct SplitResult {
  std::size_t split = 0;  // 1-based
  double test_score = 0.0;
  double best_dev = 0.0;
  std::size_t best_epoch = 0;
  OptimizerConfig config;
  LearningCurve curve;
  StudyRecord study;
};

struct ExperimentResult {
  TaskName task = TaskName::kColaLike;
  MetricKind metric = MetricKind::kMatthews;
  OptimizerKind optimizer = OptimizerKind::kAdam;
  Regime regime = Regime::kFull;
  std::vector<SplitResult> splits;
  double mean = 0.0;
  double std = 0.0;  // population
};

/// One study per split; the best trial's retained parameters are scored on
/// the test partition. Per-split failures are rethrown naming the split.
ExperimentResult run_experiment(const RunSpec& run);

struct MeanStd {
  double mean;
  double std;
};

/// Population standard deviation.
MeanStd mean_std(std::span<const double> values);

// ---------------------------------------------------------------------------
// Reporting

/// One line of results.csv.
struct ResultRow {
  std::string task;
  std::string optimizer;
  std::string regime;
  std::size_t split = 0;
  double test_score = 0.0;
  double best_dev = 0.0;
  std::size_t best_epoch = 0;
};

std::vector<ResultRow> result_rows(std::span<const ExperimentResult> results);
std::string results_csv(std::span<const ResultRow> rows);
std::vector<ResultRow> parse_results_csv(std::string_view text);

struct Summary {
  std::string task;
  MetricKind metric;
  std::string optimizer;
  std::string regime;
  double mean;
  double std;
  std::size_t n_splits;
};

std::vector<Summary> summarize(std::span<const ResultRow> rows);

/// "mean (std)" with two decimals; accuracy and macro-F1 are shown as
/// percentages ("91.61 (1.05)"), correlations as-is ("0.53 (0.03)").
std::string format_cell(MetricKind metric, double mean, double std);

struct Report {
  std::string text;  // one table per regime; '*' marks each column's best
  std::string csv;   // task,optimizer,regime,metric,mean,std,n_splits
};

Report format_report(std::span<const Summary> summaries);
Report format_report(std::span<const ExperimentResult> results);

struct CurveRow {
  std::size_t step;
  double mean_loss;
  double std_loss;
  std::optional<double> mean_dev;
  std::optional<double> std_dev;
};

/// Pointwise mean/std across splits by step index. Curves of unequal length
/// are truncated to the shortest and a warning is appended.
std::vector<CurveRow> aggregate_curves(std::span<const LearningCurve> curves,
                                       std::vector<std::string>* warnings);

std::string curve_csv(const LearningCurve& curve);
LearningCurve parse_curve_csv(std::string_view text);
std::string aggregated_curve_csv(std::span<const CurveRow> rows);

/// Stem shared by the study, curve and report file names.
std::string result_stem(std::string_view task, std::string_view optimizer,
                        std::string_view regime);

/// Writes curve_<task>_<optimizer>_<regime>.csv under `dir` and returns its
/// path.
std::filesystem::path export_curves(const ExperimentResult& result,
                                    const std::filesystem::path& dir,
                                    std::vector<std::string>* warnings);

/// Persists everything a `run` produces: results.csv (merged with rows
/// already in `dir`), per-split study JSON and curves, aggregated curves and
/// report.txt / report.csv.
void write_run_outputs(std::span<const ExperimentResult> results,
                       const std::filesystem::path& dir, std::vector<std::string>* warnings);

/// Rebuilds report.txt / report.csv from results.csv.
Report report_from_dir(const std::filesystem::path& dir);

/// Re-aggregates every per-split curve file in `dir`; returns written paths.
std::vector<std::filesystem::path> curves_from_dir(const std::filesystem::path& dir,
                                                   std::vector<std::string>* warnings);

}  // namespace optbench

#endif  // OPTBENCH_HARNESS_HPP
