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


#ifndef OPTBENCH_OBJECTIVES_HPP
#define OPTBENCH_OBJECTIVES_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "optbench/metrics.hpp"
#include "optbench/optimizers.hpp"
#include "optbench/rng.hpp"

namespace optbench {

// Synthetic stand-ins for five sentence-level benchmark tasks. Each keeps the
// class cardinality, class skew and evaluation measure of the task it is named
// after; features are Gaussian clusters (or a noisy linear signal for the
// regression task).
enum class TaskName { kSst2Like, kMrpcLike, kColaLike, kStsbLike, kMnliLike };

inline constexpr std::array<TaskName, 5> kAllTasks = {
    TaskName::kSst2Like, TaskName::kMrpcLike, TaskName::kColaLike,
    TaskName::kStsbLike, TaskName::kMnliLike};

std::string_view to_string(TaskName name);
TaskName parse_task_name(std::string_view name);

enum class ModelKind { kLogistic, kMlp, kLinear };

std::string_view to_string(ModelKind kind);

inline constexpr double kScoreMin = 1.0;
inline constexpr double kScoreMax = 5.0;

struct TaskSpec {
  TaskName name = TaskName::kColaLike;
  int n_classes = 2;                 // 0 for regression
  std::vector<double> class_skew;    // empty for regression
  MetricKind metric = MetricKind::kMatthews;
  std::size_t feature_dim = 8;
  ModelKind model = ModelKind::kLogistic;
  std::size_t hidden = 16;           // MLP only
  std::array<double, 3> split_ratios = {0.8, 0.1, 0.1};
  // Multiplies every feature. Large values move the useful weights close to
  // the origin, so small learning rates suffice (as when fine-tuning).
  double feature_scale = 1.0;
  double separation = 2.0;           // distance between class means
  double noise = 1.0;                // per-coordinate noise std
  std::size_t default_size = 600;
  bool resample_per_split = false;   // fresh dataset for every repetition

  bool is_regression() const { return n_classes == 0; }
};

TaskSpec task_spec(TaskName name);

// ---------------------------------------------------------------------------
// Data

struct Dataset {
  TaskSpec spec;
  std::size_t dim = 0;
  std::vector<double> features;  // row-major, size() * dim
  std::vector<double> targets;   // class index (as a real) or score in [1, 5]

  std::size_t size() const { return targets.size(); }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(features).subspan(i * dim, dim);
  }
  int label(std::size_t i) const { return static_cast<int>(targets[i]); }
};

/// Deterministic in (spec, size, seed). Class counts are the largest-remainder
/// rounding of size * class_skew. size < 50 throws Error(kInvalidArgument).
Dataset make_dataset(const TaskSpec& spec, std::size_t size, std::uint64_t seed);

struct DataSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> dev;
  std::vector<std::size_t> test;
  std::uint64_t split_seed = 0;
};

/// Stratifies by class (regression: by target quintile). Per-stratum partition
/// counts stay within one of exact proportionality and partition totals are
/// the largest-remainder rounding of size * ratios. A stratum with fewer than
/// three members throws Error(kPrecondition) naming it.
DataSplit stratified_split(const Dataset& data, std::array<double, 3> ratios,
                           std::uint64_t split_seed);

/// Stratum id per example: the class label, or the target quintile (0..4).
std::vector<int> strata_of(const Dataset& data);

/// Epoch-wise mini-batches over a training index set. Every epoch is a fresh
/// shuffle; batches partition it in order, the last one possibly short.
class MinibatchSampler {
 public:
  MinibatchSampler(std::span<const std::size_t> train, std::size_t batch_size,
                   std::uint64_t seed);

  std::size_t batch_size() const { return batch_size_; }
  std::size_t batches_per_epoch() const;
  std::vector<std::vector<std::size_t>> next_epoch();

 private:
  std::vector<std::size_t> order_;
  std::size_t batch_size_;
  Rng rng_;
};

// ---------------------------------------------------------------------------
// Models

struct Segment {
  std::string name;
  std::size_t offset;
  std::size_t rows;
  std::size_t cols;
};

struct ModelParams {
  ParamVector theta;
  std::vector<Segment> layout;
};

/// Block layout for the task's model (logistic: W, b; mlp: W1, b1, W2, b2;
/// linear: w, b).
std::vector<Segment> model_layout(const TaskSpec& spec);
std::size_t param_count(const TaskSpec& spec);

/// Uniform in [-0.1, 0.1].
ModelParams init_params(const TaskSpec& spec, std::uint64_t seed);

struct LossGrad {
  double loss;
  ParamVector grad;
};

/// Mean softmax cross-entropy (classification) or mean squared error
/// (regression) over `batch`, with its analytic gradient. The linear model
/// predicts 3 + b + w.x so an all-zero model sits mid-range.
LossGrad loss_and_grad(const ModelParams& params, const Dataset& data,
                       std::span<const std::size_t> batch);

/// Mean loss only.
double mean_loss(const ModelParams& params, const Dataset& data,
                 std::span<const std::size_t> indices);

using Predictions = std::variant<std::vector<int>, std::vector<double>>;

/// `inputs` is row-major with spec.feature_dim columns. Classification returns
/// the argmax class (lowest index on ties); regression the output clamped to
/// [1, 5].
Predictions predict(const ModelParams& params, const TaskSpec& spec,
                    std::span<const double> inputs);

Predictions predict_indices(const ModelParams& params, const Dataset& data,
                            std::span<const std::size_t> indices);
Predictions golds_of(const Dataset& data, std::span<const std::size_t> indices);

/// Dispatches to the task's metric. A prediction type that does not match the
/// task, or labels outside the task's classes, throw Error(kInvalidArgument).
MetricValue evaluate(const TaskSpec& spec, const Predictions& preds,
                     const Predictions& golds);

MetricValue evaluate_params(const ModelParams& params, const Dataset& data,
                            std::span<const std::size_t> indices);

// ---------------------------------------------------------------------------
// Import / export

/// Header f0..f{d-1},target; one row per example.
void write_dataset_csv(const Dataset& data, std::ostream& out);
Dataset read_dataset_csv(const TaskSpec& spec, std::istream& in);

/// {"train": [...], "dev": [...], "test": [...], "split_seed": n}
std::string split_to_json(const DataSplit& split);
DataSplit split_from_json(std::string_view text);

}  // namespace optbench

#endif  // OPTBENCH_OBJECTIVES_HPP
