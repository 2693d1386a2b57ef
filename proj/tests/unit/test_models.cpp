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


#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "optbench/error.hpp"
#include "optbench/objectives.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace optbench;
using optbench::testing::code_of;

namespace {

std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

ModelParams zeros(const TaskSpec& spec) {
  ModelParams p = init_params(spec, 0);
  std::fill(p.theta.begin(), p.theta.end(), 0.0);
  return p;
}

}  // namespace

TEST_CASE("layouts") {
  CHECK(param_count(task_spec(TaskName::kColaLike)) == 2 * 8 + 2);
  CHECK(param_count(task_spec(TaskName::kStsbLike)) == 9);
  CHECK(param_count(task_spec(TaskName::kMnliLike)) == 16 * 8 + 16 + 3 * 16 + 3);
  const ModelParams p = init_params(task_spec(TaskName::kSst2Like), 3);
  for (double w : p.theta) CHECK((w >= -0.1 && w <= 0.1));
  CHECK(p.theta == init_params(task_spec(TaskName::kSst2Like), 3).theta);
}

TEST_CASE("uniform prediction costs ln 2") {
  const TaskSpec spec = task_spec(TaskName::kColaLike);
  Dataset d = make_dataset(spec, 100, 1);
  std::vector<std::size_t> batch;
  for (std::size_t i = 0; i < d.size() && batch.size() < 10; ++i)
    if (d.label(i) == 0) batch.push_back(i);
  for (std::size_t i = 0; i < d.size() && batch.size() < 20; ++i)
    if (d.label(i) == 1) batch.push_back(i);
  const LossGrad lg = loss_and_grad(zeros(spec), d, batch);
  CHECK(lg.loss == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("a perfect linear fit has zero loss and gradient") {
  const TaskSpec spec = task_spec(TaskName::kStsbLike);
  Dataset d = make_dataset(spec, 60, 2);
  ModelParams p = zeros(spec);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (double& w : p.theta) w = u(rng);
  for (std::size_t i = 0; i < d.size(); ++i) {
    double y = 3.0 + p.theta[8];
    for (std::size_t j = 0; j < 8; ++j) y += p.theta[j] * d.row(i)[j];
    d.targets[i] = y;
  }
  const LossGrad lg = loss_and_grad(p, d, iota(d.size()));
  CHECK(lg.loss < 1e-24);
  for (double g : lg.grad) CHECK(std::fabs(g) < 1e-12);
}

TEST_CASE("analytic gradients match finite differences") {
  std::mt19937_64 rng(77);
  for (TaskName t : {TaskName::kColaLike, TaskName::kMrpcLike, TaskName::kStsbLike,
                     TaskName::kSst2Like, TaskName::kMnliLike}) {
    CAPTURE(to_string(t));
    const TaskSpec spec = task_spec(t);
    const Dataset d = make_dataset(spec, 200, 8);
    std::uniform_int_distribution<std::size_t> pick(0, d.size() - 1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // Large-scale features are shrunk into the weights so logits stay O(1).
    const double w_scale = 0.5 / spec.feature_scale;
    for (int probe = 0; probe < 20; ++probe) {
      ModelParams p = init_params(spec, 1000 + probe);
      for (const Segment& s : p.layout) {
        const bool input_weights = s.name == "W" || s.name == "W1" || s.name == "w";
        for (std::size_t k = 0; k < s.rows * s.cols; ++k) {
          p.theta[s.offset + k] = u(rng) * (input_weights ? w_scale : 0.5);
        }
      }
      std::vector<std::size_t> batch(1 + probe % 6);
      for (std::size_t& i : batch) i = pick(rng);
      const LossGrad lg = loss_and_grad(p, d, batch);
      const std::vector<double> fd = oracle::finite_difference_grad(p, d, batch, 1e-6);
      CHECK(oracle::relative_error(lg.grad, fd) < 1e-5);
      CHECK(lg.loss == doctest::Approx(mean_loss(p, d, batch)).epsilon(1e-14));
    }
  }
}

TEST_CASE("prediction rules") {
  const TaskSpec logi = task_spec(TaskName::kMnliLike);
  const std::vector<double> x(3 * logi.feature_dim, 0.7);
  const auto labels = std::get<std::vector<int>>(predict(zeros(logi), logi, x));
  CHECK(labels == std::vector<int>{0, 0, 0});

  const TaskSpec lin = task_spec(TaskName::kStsbLike);
  ModelParams p = zeros(lin);
  p.theta[8] = 7.0;
  const std::vector<double> one(lin.feature_dim, 1.0);
  CHECK(std::get<std::vector<double>>(predict(p, lin, one)) == std::vector<double>{5.0});
  p.theta[8] = -9.0;
  CHECK(std::get<std::vector<double>>(predict(p, lin, one)) == std::vector<double>{1.0});
  CHECK(code_of([&] { predict(p, lin, std::vector<double>(5, 0.0)); }) ==
        ErrorCode::kDimensionMismatch);

  // Batch prediction is the pointwise map.
  const TaskSpec mlp = task_spec(TaskName::kSst2Like);
  const Dataset d = make_dataset(mlp, 80, 3);
  const ModelParams q = init_params(mlp, 4);
  const auto all = std::get<std::vector<int>>(predict(q, mlp, d.features));
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(std::get<std::vector<int>>(predict(q, mlp, d.row(i)))[0] == all[i]);
  }
}

TEST_CASE("one small full-batch step lowers the convex loss") {
  const TaskSpec spec = task_spec(TaskName::kColaLike);
  const Dataset d = make_dataset(spec, 400, 5);
  const auto all = iota(d.size());
  ModelParams p = init_params(spec, 2);
  const LossGrad before = loss_and_grad(p, d, all);
  for (std::size_t i = 0; i < p.theta.size(); ++i) p.theta[i] -= 1e-8 * before.grad[i];
  CHECK(mean_loss(p, d, all) < before.loss);
}

TEST_CASE("a non-finite loss names the example") {
  const TaskSpec spec = task_spec(TaskName::kColaLike);
  Dataset d = make_dataset(spec, 60, 5);
  d.features[13 * d.dim + 2] = std::numeric_limits<double>::infinity();
  const std::vector<std::size_t> batch{4, 13};
  try {
    loss_and_grad(init_params(spec, 1), d, batch);
    FAIL("expected a non-finite error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonFinite);
    CHECK(std::string(e.what()).find("13") != std::string::npos);
  }
  CHECK(code_of([&] { loss_and_grad(init_params(spec, 1), d, std::vector<std::size_t>{}); }) ==
        ErrorCode::kInvalidArgument);
}
