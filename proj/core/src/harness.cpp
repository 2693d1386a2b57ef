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


#include "optbench/harness.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "optbench/error.hpp"
#include "optbench/rng.hpp"

namespace optbench {

void validate(const RunSpec& run) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidConfig, what); };
  if (run.epochs == 0) fail("epochs must be >= 1");
  if (run.batch_size == 0) fail("batch size must be >= 1");
  if (run.n_splits == 0) fail("number of splits must be >= 1");
  if (run.trial_budget == 0 || run.trial_budget > kMaxTrials) {
    fail("trial budget must be in [1, " + std::to_string(kMaxTrials) + "]");
  }
  if (run.effective_size() < 50) fail("dataset size must be >= 50");
}

TrainResult train(const OptimizerConfig& config, const Dataset& data, const DataSplit& split,
                  const TrainOptions& options) {
  validate(config);
  if (options.epochs == 0) throw Error(ErrorCode::kInvalidConfig, "epochs must be >= 1");

  TrainResult out;
  out.record.config = config;
  ModelParams params = init_params(data.spec, derive_seed(options.seed, "init"));
  out.best_params = params;
  OptimizerState state = init_state(config, params.theta.size());
  MinibatchSampler sampler(split.train, options.batch_size,
                           derive_seed(options.seed, "batches"));
  const DevScorer scorer = options.dev_scorer ? options.dev_scorer
                                              : [&](const ModelParams& p) {
                                                  return evaluate_params(p, data, split.dev).value;
                                                };

  std::size_t step_index = 0;
  try {
    for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
      for (const auto& batch : sampler.next_epoch()) {
        LossGrad lg = loss_and_grad(params, data, batch);
        out.curve.points.push_back({step_index++, lg.loss, std::nullopt});
        StepResult next = step(state, params.theta, lg.grad, config);
        params.theta = std::move(next.theta);
        state = std::move(next.state);
      }
      const double score = scorer(params);
      if (!std::isfinite(score)) {
        throw Error(ErrorCode::kNonFinite, "non-finite dev score");
      }
      out.curve.points.back().dev = score;
      out.record.epoch_scores.push_back(score);
      if (score > out.record.best_dev) {
        out.record.best_dev = score;
        out.record.best_epoch = epoch;
        out.best_params = params;
      }
      if (options.prune_hook && options.prune_hook(epoch, score)) {
        out.record.status = TrialStatus::kPruned;
        break;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNonFinite) throw;
    out.record.status = TrialStatus::kFailed;
    out.record.best_dev = -std::numeric_limits<double>::infinity();
  }
  return out;
}

StudyOutcome run_study(const RunSpec& run, const Dataset& data, const DataSplit& split) {
  validate(run);
  const SpaceSpec space = search_space(run.optimizer, run.regime);
  const std::size_t budget = run.regime == Regime::kDefaults ? 1 : run.trial_budget;
  const std::string label = std::string(to_string(run.task.name)) + "/" +
                            std::string(to_string(run.optimizer)) + "/" +
                            std::string(to_string(run.regime));

  StudyOutcome out;
  out.study.optimizer = run.optimizer;
  out.study.regime = run.regime;
  out.study.sampler_seed = derive_seed(derive_seed(run.master_seed, label), "sampler",
                                       split.split_seed);
  Rng sampler_rng(out.study.sampler_seed);
  bool have_best = false;

  for (std::size_t trial = 0; trial < budget; ++trial) {
    const OptimizerConfig config = suggest(out.study, space, sampler_rng);
    TrainOptions options;
    options.epochs = run.epochs;
    options.batch_size = run.batch_size;
    // Trial seeds do not depend on the optimizer or regime: trial k of every
    // study on a split starts from the same weights and batch order.
    options.seed = derive_seed(run.master_seed ^ split.split_seed, "trial", trial);
    TrialRecord running;
    options.prune_hook = [&](std::size_t epoch, double score) {
      return should_prune(out.study, running, epoch, score);
    };
    TrainResult result = train(config, data, split, options);
    const TrialRecord& rec = result.record;
    if (rec.status == TrialStatus::kCompleted &&
        (!have_best || rec.best_dev > out.study.trials[out.best_index].best_dev)) {
      have_best = true;
      out.best_index = out.study.trials.size();
      out.best_params = std::move(result.best_params);
      out.best_curve = std::move(result.curve);
    }
    out.study.trials.push_back(std::move(result.record));
  }
  if (!have_best) {
    throw Error(ErrorCode::kNoViableTrial,
                "no viable trial for " + label + ": every trial diverged");
  }
  return out;
}

MeanStd mean_std(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "mean of nothing");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / n)};
}

ExperimentResult run_experiment(const RunSpec& run) {
  validate(run);
  ExperimentResult result;
  result.task = run.task.name;
  result.metric = run.task.metric;
  result.optimizer = run.optimizer;
  result.regime = run.regime;
  const std::string task = std::string(to_string(run.task.name));
  const std::uint64_t shared_data_seed = derive_seed(run.master_seed, "data:" + task);

  std::vector<double> scores;
  for (std::size_t k = 1; k <= run.n_splits; ++k) {
    try {
      const std::uint64_t data_seed = run.task.resample_per_split
                                          ? derive_seed(run.master_seed, "data:" + task, k)
                                          : shared_data_seed;
      const Dataset data = make_dataset(run.task, run.effective_size(), data_seed);
      const DataSplit split = stratified_split(
          data, run.task.split_ratios, derive_seed(run.master_seed, "split:" + task, k));
      StudyOutcome study = run_study(run, data, split);
      const TrialRecord& best = study.study.trials[study.best_index];

      SplitResult sr;
      sr.split = k;
      sr.test_score = evaluate_params(study.best_params, data, split.test).value;
      sr.best_dev = best.best_dev;
      sr.best_epoch = best.best_epoch;
      sr.config = best.config;
      sr.curve = std::move(study.best_curve);
      sr.study = std::move(study.study);
      scores.push_back(sr.test_score);
      result.splits.push_back(std::move(sr));
    } catch (const Error& e) {
      throw Error(e.code(), "split " + std::to_string(k) + ": " + e.what());
    }
  }
  const MeanStd ms = mean_std(scores);
  result.mean = ms.mean;
  result.std = ms.std;
  return result;
}

}  // namespace optbench
