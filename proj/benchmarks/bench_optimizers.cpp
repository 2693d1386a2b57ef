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

#include <random>

#include "optbench/optimizers.hpp"

namespace {

using optbench::OptimizerKind;

void BM_Step(benchmark::State& state, OptimizerKind kind) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const optbench::OptimizerConfig config = optbench::default_config(kind);
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  optbench::ParamVector theta(dim);
  optbench::ParamVector g(dim);
  for (auto& x : theta) x = normal(rng);
  for (auto& x : g) x = normal(rng);
  optbench::OptimizerState opt = optbench::init_state(config, dim);
  for (auto _ : state) {
    auto next = optbench::step(opt, theta, g, config);
    benchmark::DoNotOptimize(next.theta.data());
    opt = std::move(next.state);
    theta = std::move(next.theta);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(dim));
}

BENCHMARK_CAPTURE(BM_Step, sgd, OptimizerKind::kSGD)->Range(16, 4096);
BENCHMARK_CAPTURE(BM_Step, sgdm, OptimizerKind::kSGDM)->Range(16, 4096);
BENCHMARK_CAPTURE(BM_Step, adam, OptimizerKind::kAdam)->Range(16, 4096);
BENCHMARK_CAPTURE(BM_Step, nadam, OptimizerKind::kNadam)->Range(16, 4096);
BENCHMARK_CAPTURE(BM_Step, adamw, OptimizerKind::kAdamW)->Range(16, 4096);
BENCHMARK_CAPTURE(BM_Step, adamax, OptimizerKind::kAdaMax)->Range(16, 4096);
BENCHMARK_CAPTURE(BM_Step, adabound, OptimizerKind::kAdaBound)->Range(16, 4096);

}  // namespace
