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


#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "optbench/error.hpp"
#include "optbench/objectives.hpp"

namespace optbench {

namespace {

constexpr double kScoreMid = 0.5 * (kScoreMin + kScoreMax);

std::size_t output_count(const TaskSpec& spec) {
  return spec.is_regression() ? 1 : static_cast<std::size_t>(spec.n_classes);
}

void check_params(const ModelParams& params, const TaskSpec& spec) {
  if (params.theta.size() != param_count(spec)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "parameter vector has " + std::to_string(params.theta.size()) +
                    " entries, model needs " + std::to_string(param_count(spec)));
  }
}

/// Per-example forward pass with optional gradient accumulation. Scratch
/// buffers are owned by the caller to avoid reallocating per example.
class Model {
 public:
  explicit Model(const TaskSpec& spec)
      : spec_(spec), d_(spec.feature_dim), c_(output_count(spec)), h_(spec.hidden) {
    out_.resize(c_);
    if (spec.model == ModelKind::kMlp) {
      hidden_.resize(h_);
      dhidden_.resize(h_);
    }
  }

  /// Fills out_ (logits or the raw regression output).
  void forward(std::span<const double> theta, std::span<const double> x) {
    switch (spec_.model) {
      case ModelKind::kLogistic: {
        const double* w = theta.data();
        const double* b = w + c_ * d_;
        for (std::size_t k = 0; k < c_; ++k) out_[k] = b[k] + dot(w + k * d_, x.data(), d_);
        break;
      }
      case ModelKind::kMlp: {
        const double* w1 = theta.data();
        const double* b1 = w1 + h_ * d_;
        const double* w2 = b1 + h_;
        const double* b2 = w2 + c_ * h_;
        for (std::size_t j = 0; j < h_; ++j) {
          hidden_[j] = std::tanh(b1[j] + dot(w1 + j * d_, x.data(), d_));
        }
        for (std::size_t k = 0; k < c_; ++k) {
          out_[k] = b2[k] + dot(w2 + k * h_, hidden_.data(), h_);
        }
        break;
      }
      case ModelKind::kLinear:
        out_[0] = kScoreMid + theta[d_] + dot(theta.data(), x.data(), d_);
        break;
    }
  }

  /// Loss of the last forward pass against `target`; when `grad` is non-empty
  /// adds scale * d(loss)/d(theta) into it.
  double backward(std::span<const double> theta, std::span<const double> x, double target,
                  std::span<double> grad, double scale) {
    double loss;
    if (spec_.is_regression()) {
      const double resid = out_[0] - target;
      loss = resid * resid;
      out_[0] = 2.0 * resid;  // reuse as d(loss)/d(output)
    } else {
      const auto y = static_cast<std::size_t>(target);
      const double zmax = *std::max_element(out_.begin(), out_.end());
      double sum = 0.0;
      for (double z : out_) sum += std::exp(z - zmax);
      const double lse = zmax + std::log(sum);
      loss = lse - out_[y];
      for (std::size_t k = 0; k < c_; ++k) {
        out_[k] = std::exp(out_[k] - lse) - (k == y ? 1.0 : 0.0);
      }
    }
    if (grad.empty()) return loss;

    switch (spec_.model) {
      case ModelKind::kLogistic: {
        double* gw = grad.data();
        double* gb = gw + c_ * d_;
        for (std::size_t k = 0; k < c_; ++k) {
          const double dz = scale * out_[k];
          axpy(dz, x.data(), gw + k * d_, d_);
          gb[k] += dz;
        }
        break;
      }
      case ModelKind::kMlp: {
        const double* w2 = theta.data() + h_ * d_ + h_;
        double* gw1 = grad.data();
        double* gb1 = gw1 + h_ * d_;
        double* gw2 = gb1 + h_;
        double* gb2 = gw2 + c_ * h_;
        std::fill(dhidden_.begin(), dhidden_.end(), 0.0);
        for (std::size_t k = 0; k < c_; ++k) {
          const double dz = scale * out_[k];
          axpy(dz, hidden_.data(), gw2 + k * h_, h_);
          axpy(dz, w2 + k * h_, dhidden_.data(), h_);
          gb2[k] += dz;
        }
        for (std::size_t j = 0; j < h_; ++j) {
          const double da = dhidden_[j] * (1.0 - hidden_[j] * hidden_[j]);
          axpy(da, x.data(), gw1 + j * d_, d_);
          gb1[j] += da;
        }
        break;
      }
      case ModelKind::kLinear: {
        const double dy = scale * out_[0];
        axpy(dy, x.data(), grad.data(), d_);
        grad[d_] += dy;
        break;
      }
    }
    return loss;
  }

  std::span<const double> outputs() const { return out_; }

 private:
  static double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  static void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
  }

  const TaskSpec& spec_;
  std::size_t d_;
  std::size_t c_;
  std::size_t h_;
  std::vector<double> out_;
  std::vector<double> hidden_;
  std::vector<double> dhidden_;
};

double batch_loss(const ModelParams& params, const Dataset& data,
                  std::span<const std::size_t> batch, std::span<double> grad) {
  if (batch.empty()) throw Error(ErrorCode::kInvalidArgument, "empty batch");
  check_params(params, data.spec);
  if (data.dim != data.spec.feature_dim) {
    throw Error(ErrorCode::kDimensionMismatch, "dataset dimension differs from task");
  }
  Model model(data.spec);
  const double scale = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  for (std::size_t idx : batch) {
    if (idx >= data.size()) {
      throw Error(ErrorCode::kInvalidArgument, "example index " + std::to_string(idx) +
                                                   " out of range");
    }
    const auto x = data.row(idx);
    model.forward(params.theta, x);
    const double loss = model.backward(params.theta, x, data.targets[idx], grad, scale);
    if (!std::isfinite(loss)) {
      throw Error(ErrorCode::kNonFinite,
                  "non-finite loss at example " + std::to_string(idx));
    }
    total += loss;
  }
  return total * scale;
}

}  // namespace

std::vector<Segment> model_layout(const TaskSpec& spec) {
  const std::size_t d = spec.feature_dim;
  const std::size_t c = output_count(spec);
  switch (spec.model) {
    case ModelKind::kLogistic:
      return {{"W", 0, c, d}, {"b", c * d, c, 1}};
    case ModelKind::kMlp: {
      const std::size_t h = spec.hidden;
      return {{"W1", 0, h, d},
              {"b1", h * d, h, 1},
              {"W2", h * d + h, c, h},
              {"b2", h * d + h + c * h, c, 1}};
    }
    case ModelKind::kLinear:
      return {{"w", 0, 1, d}, {"b", d, 1, 1}};
  }
  return {};
}

std::size_t param_count(const TaskSpec& spec) {
  std::size_t n = 0;
  for (const Segment& s : model_layout(spec)) n += s.rows * s.cols;
  return n;
}

ModelParams init_params(const TaskSpec& spec, std::uint64_t seed) {
  if (spec.is_regression() != (spec.model == ModelKind::kLinear)) {
    throw Error(ErrorCode::kInvalidArgument,
                "linear model is for regression, logistic/mlp for classification");
  }
  ModelParams params;
  params.layout = model_layout(spec);
  params.theta.resize(param_count(spec));
  Rng rng(seed);
  std::uniform_real_distribution<double> uniform(-0.1, 0.1);
  for (double& w : params.theta) w = uniform(rng);
  return params;
}

LossGrad loss_and_grad(const ModelParams& params, const Dataset& data,
                       std::span<const std::size_t> batch) {
  LossGrad out{0.0, ParamVector(params.theta.size(), 0.0)};
  out.loss = batch_loss(params, data, batch, out.grad);
  return out;
}

double mean_loss(const ModelParams& params, const Dataset& data,
                 std::span<const std::size_t> indices) {
  return batch_loss(params, data, indices, {});
}

Predictions predict(const ModelParams& params, const TaskSpec& spec,
                    std::span<const double> inputs) {
  check_params(params, spec);
  const std::size_t d = spec.feature_dim;
  if (d == 0 || inputs.size() % d != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input length " + std::to_string(inputs.size()) +
                    " is not a multiple of feature dimension " + std::to_string(d));
  }
  const std::size_t n = inputs.size() / d;
  Model model(spec);
  if (spec.is_regression()) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      model.forward(params.theta, inputs.subspan(i * d, d));
      out[i] = std::clamp(model.outputs()[0], kScoreMin, kScoreMax);
    }
    return out;
  }
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    model.forward(params.theta, inputs.subspan(i * d, d));
    const auto z = model.outputs();
    // max_element returns the first maximum: ties go to the lowest class.
    out[i] = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
  }
  return out;
}

Predictions predict_indices(const ModelParams& params, const Dataset& data,
                            std::span<const std::size_t> indices) {
  std::vector<double> rows;
  rows.reserve(indices.size() * data.dim);
  for (std::size_t i : indices) {
    const auto r = data.row(i);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return predict(params, data.spec, rows);
}

Predictions golds_of(const Dataset& data, std::span<const std::size_t> indices) {
  if (data.spec.is_regression()) {
    std::vector<double> out;
    out.reserve(indices.size());
    for (std::size_t i : indices) out.push_back(data.targets[i]);
    return out;
  }
  std::vector<int> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(data.label(i));
  return out;
}

MetricValue evaluate(const TaskSpec& spec, const Predictions& preds,
                     const Predictions& golds) {
  if (spec.is_regression()) {
    const auto* p = std::get_if<std::vector<double>>(&preds);
    const auto* g = std::get_if<std::vector<double>>(&golds);
    if (p == nullptr || g == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(to_string(spec.name)) + " expects real-valued scores");
    }
    return {spec.metric, pearson_corr(*p, *g)};
  }
  const auto* p = std::get_if<std::vector<int>>(&preds);
  const auto* g = std::get_if<std::vector<int>>(&golds);
  if (p == nullptr || g == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(to_string(spec.name)) + " expects class labels");
  }
  for (const auto* labels : {p, g}) {
    for (int y : *labels) {
      if (y < 0 || y >= spec.n_classes) {
        throw Error(ErrorCode::kInvalidArgument,
                    "label " + std::to_string(y) + " outside the " +
                        std::to_string(spec.n_classes) + " classes of " +
                        std::string(to_string(spec.name)));
      }
    }
  }
  switch (spec.metric) {
    case MetricKind::kAccuracy: return {spec.metric, accuracy(*p, *g)};
    case MetricKind::kMacroF1: return {spec.metric, macro_f1(*p, *g, spec.n_classes)};
    case MetricKind::kMatthews: return {spec.metric, matthews_corr(*p, *g)};
    case MetricKind::kPearson: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "Pearson needs a regression task");
}

MetricValue evaluate_params(const ModelParams& params, const Dataset& data,
                            std::span<const std::size_t> indices) {
  return evaluate(data.spec, predict_indices(params, data, indices),
                  golds_of(data, indices));
}

}  // namespace optbench
