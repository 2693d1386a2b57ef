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


#include <benchmark/benchmark.h>

#include "optbench/harness.hpp"
#include "optbench/objectives.hpp"
#include "optbench/tuner.hpp"

namespace {

using namespace optbench;

void BM_LossAndGrad(benchmark::State& state, TaskName name) {
  const TaskSpec spec = task_spec(name);
  const Dataset data = make_dataset(spec, 400, 1);
  const ModelParams params = init_params(spec, 2);
  const std::vector<std::size_t> batch = {3, 17, 101, 250};
  for (auto _ : state) {
    auto lg = loss_and_grad(params, data, batch);
    benchmark::DoNotOptimize(lg.loss);
  }
}
BENCHMARK_CAPTURE(BM_LossAndGrad, logistic, TaskName::kColaLike);
BENCHMARK_CAPTURE(BM_LossAndGrad, mlp, TaskName::kMnliLike);
BENCHMARK_CAPTURE(BM_LossAndGrad, linear, TaskName::kStsbLike);

void BM_TrainOneTrial(benchmark::State& state) {
  const TaskSpec spec = task_spec(TaskName::kColaLike);
  const Dataset data = make_dataset(spec, spec.default_size, 1);
  const DataSplit split = stratified_split(data, spec.split_ratios, 7);
  TrainOptions options;
  options.epochs = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto result = train(default_config(OptimizerKind::kAdam), data, split, options);
    benchmark::DoNotOptimize(result.record.best_dev);
  }
}
BENCHMARK(BM_TrainOneTrial)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SuggestTpe(benchmark::State& state) {
  const SpaceSpec space = search_space(OptimizerKind::kAdaBound, Regime::kFull);
  Rng rng(3);
  StudyRecord study;
  for (std::size_t i = 0; i < 29; ++i) {
    TrialRecord t;
    t.config = suggest(study, space, rng);
    t.best_dev = static_cast<double>(i % 7) / 7.0;
    t.epoch_scores = {t.best_dev};
    study.trials.push_back(t);
  }
  for (auto _ : state) {
    auto c = suggest(study, space, rng);
    benchmark::DoNotOptimize(c.epsilon);
  }
}
BENCHMARK(BM_SuggestTpe);

}  // namespace
