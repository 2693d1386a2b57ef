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


#include "optbench/optimizers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "optbench/error.hpp"

namespace optbench {

std::string_view to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kSGD: return "SGD";
    case OptimizerKind::kSGDM: return "SGDM";
    case OptimizerKind::kAdam: return "Adam";
    case OptimizerKind::kNadam: return "Nadam";
    case OptimizerKind::kAdamW: return "AdamW";
    case OptimizerKind::kAdaMax: return "AdaMax";
    case OptimizerKind::kAdaBound: return "AdaBound";
  }
  return "?";
}

OptimizerKind parse_optimizer_kind(std::string_view name) {
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
  };
  const std::string wanted = lower(name);
  for (OptimizerKind kind : kAllOptimizers) {
    if (lower(to_string(kind)) == wanted) return kind;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown optimizer '" + std::string(name) + "'");
}

bool is_adaptive(OptimizerKind kind) {
  return kind != OptimizerKind::kSGD && kind != OptimizerKind::kSGDM;
}

OptimizerConfig default_config(OptimizerKind kind) {
  OptimizerConfig c;
  c.kind = kind;
  c.epsilon = 1e-3;
  switch (kind) {
    case OptimizerKind::kSGDM:
      c.alpha = 0.9;
      break;
    case OptimizerKind::kNadam:
      c.epsilon = 2e-3;
      c.alpha = 4e-3;
      break;
    case OptimizerKind::kAdaMax:
      c.epsilon = 2e-3;
      break;
    default:
      break;
  }
  return c;
}

void validate(const OptimizerConfig& c) {
  auto fail = [](const char* field, double value, const char* range) {
    throw Error(ErrorCode::kInvalidConfig, std::string(field) + " = " +
                                               std::to_string(value) +
                                               " outside " + range);
  };
  const double fields[] = {c.epsilon, c.rho1,   c.rho2,     c.delta, c.alpha,
                           c.lambda,  c.gamma, c.eps_star};
  for (double f : fields) {
    if (!std::isfinite(f)) {
      throw Error(ErrorCode::kInvalidConfig, "non-finite hyperparameter");
    }
  }
  if (!(c.epsilon > 0.0)) fail("epsilon", c.epsilon, "(0, inf)");
  if (!(c.rho1 >= 0.0 && c.rho1 < 1.0)) fail("rho1", c.rho1, "[0, 1)");
  if (!(c.rho2 >= 0.0 && c.rho2 < 1.0)) fail("rho2", c.rho2, "[0, 1)");
  if (!(c.delta > 0.0)) fail("delta", c.delta, "(0, inf)");
  if (!(c.alpha >= 0.0)) fail("alpha", c.alpha, "[0, inf)");
  if (c.kind == OptimizerKind::kSGDM && !(c.alpha < 1.0)) {
    fail("alpha", c.alpha, "[0, 1) for SGDM");
  }
  if (!(c.lambda > 0.0 && c.lambda < 1.0)) fail("lambda", c.lambda, "(0, 1)");
  if (!(c.eps_star > 0.0)) fail("eps_star", c.eps_star, "(0, inf)");
  if (!(c.gamma > 0.0)) fail("gamma", c.gamma, "(0, inf)");
}

OptimizerState init_state(const OptimizerConfig& /*config*/, std::size_t dim) {
  if (dim == 0) {
    throw Error(ErrorCode::kInvalidDimension, "parameter dimension must be >= 1");
  }
  OptimizerState state;
  state.s.assign(dim, 0.0);
  state.r.assign(dim, 0.0);
  state.v.assign(dim, 0.0);
  return state;
}

namespace {

void check_inputs(const OptimizerState& state, std::span<const double> theta,
                  std::span<const double> g) {
  const std::size_t n = theta.size();
  if (n == 0 || g.size() != n || state.s.size() != n || state.r.size() != n ||
      state.v.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "theta, gradient and optimizer state lengths disagree");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(g[i])) {
      throw Error(ErrorCode::kNonFinite,
                  "non-finite gradient at coordinate " + std::to_string(i));
    }
  }
}

void check_finite(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::kNonFinite, std::string("non-finite ") + what +
                                             " at coordinate " + std::to_string(i));
    }
  }
}

StepResult start(const OptimizerState& state, std::span<const double> theta) {
  return StepResult{ParamVector(theta.begin(), theta.end()), state};
}

}  // namespace

StepResult sgd_step(const OptimizerState& state, std::span<const double> theta,
                    std::span<const double> g, const OptimizerConfig& config) {
  check_inputs(state, theta, g);
  StepResult out = start(state, theta);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    out.theta[i] = theta[i] - config.epsilon * g[i];
  }
  out.state.t += 1;
  check_finite(out.theta, "parameter");
  return out;
}

StepResult sgdm_step(const OptimizerState& state, std::span<const double> theta,
                     std::span<const double> g, const OptimizerConfig& config) {
  check_inputs(state, theta, g);
  StepResult out = start(state, theta);
  const double a = config.alpha;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    // Both lines read the old velocity.
    out.theta[i] = theta[i] - config.epsilon * g[i] + a * state.v[i];
    out.state.v[i] = a * state.v[i] - config.epsilon * g[i];
  }
  out.state.t += 1;
  check_finite(out.theta, "parameter");
  check_finite(out.state.v, "velocity");
  return out;
}

StepResult adam_step(const OptimizerState& state, std::span<const double> theta,
                     std::span<const double> g, const OptimizerConfig& config,
                     OptimizerKind variant) {
  if (variant != OptimizerKind::kAdam && variant != OptimizerKind::kNadam &&
      variant != OptimizerKind::kAdamW) {
    throw Error(ErrorCode::kInvalidVariant,
                "adam_step variant must be Adam, Nadam or AdamW, got " +
                    std::string(to_string(variant)));
  }
  check_inputs(state, theta, g);
  StepResult out = start(state, theta);
  const std::uint64_t t = state.t + 1;
  const double rho1 = config.rho1;
  const double rho2 = config.rho2;
  const double td = static_cast<double>(t);
  const double corr1 = 1.0 - std::pow(rho1, td);
  const double corr1_next = 1.0 - std::pow(rho1, td + 1.0);
  const double corr2 = 1.0 - std::pow(rho2, td);

  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double s = rho1 * state.s[i] + (1.0 - rho1) * g[i];
    const double r = rho2 * state.r[i] + (1.0 - rho2) * g[i] * g[i];
    double s_hat;
    double r_hat;
    if (variant == OptimizerKind::kNadam) {
      s_hat = rho1 * s / corr1_next + (1.0 - rho1) * g[i] / corr1;
      r_hat = rho2 * r / corr2;
    } else {
      s_hat = s / corr1;
      r_hat = r / corr2;
    }
    double next = theta[i] - config.epsilon * s_hat / (config.delta + std::sqrt(r_hat));
    if (variant == OptimizerKind::kAdamW) next -= config.lambda * theta[i];
    out.theta[i] = next;
    out.state.s[i] = s;
    out.state.r[i] = r;
  }
  out.state.t = t;
  check_finite(out.theta, "parameter");
  check_finite(out.state.r, "second moment");
  return out;
}

StepResult adamax_step(const OptimizerState& state, std::span<const double> theta,
                       std::span<const double> g, const OptimizerConfig& config) {
  check_inputs(state, theta, g);
  StepResult out = start(state, theta);
  const std::uint64_t t = state.t + 1;
  const double rate =
      config.epsilon / (1.0 - std::pow(config.rho1, static_cast<double>(t)));
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double s = config.rho1 * state.s[i] + (1.0 - config.rho1) * g[i];
    const double r = std::max(config.rho2 * state.r[i], std::abs(g[i]));
    out.state.s[i] = s;
    out.state.r[i] = r;
    // r == 0 implies s == 0: the whole gradient history here is zero.
    if (r > 0.0) out.theta[i] = theta[i] - rate * (s / r);
  }
  out.state.t = t;
  check_finite(out.theta, "parameter");
  return out;
}

LearningRateBounds adabound_bounds(std::uint64_t t, const OptimizerConfig& config) {
  if (t == 0) {
    throw Error(ErrorCode::kPrecondition, "AdaBound bounds need t >= 1");
  }
  const double gt = config.gamma * static_cast<double>(t);
  return LearningRateBounds{config.eps_star * (1.0 - 1.0 / (gt + 1.0)),
                            config.eps_star * (1.0 + 1.0 / gt)};
}

StepResult adabound_step(const OptimizerState& state, std::span<const double> theta,
                         std::span<const double> g, const OptimizerConfig& config) {
  check_inputs(state, theta, g);
  StepResult out = start(state, theta);
  const std::uint64_t t = state.t + 1;
  const LearningRateBounds bounds = adabound_bounds(t, config);
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const double s = config.rho1 * state.s[i] + (1.0 - config.rho1) * g[i];
    const double r = config.rho2 * state.r[i] + (1.0 - config.rho2) * g[i] * g[i];
    const double eta =
        std::clamp(config.epsilon / (std::sqrt(r) + config.delta), bounds.lo, bounds.hi);
    out.theta[i] = theta[i] - eta * s;
    out.state.s[i] = s;
    out.state.r[i] = r;
  }
  out.state.t = t;
  check_finite(out.theta, "parameter");
  check_finite(out.state.r, "second moment");
  return out;
}

StepResult step(const OptimizerState& state, std::span<const double> theta,
                std::span<const double> g, const OptimizerConfig& config) {
  switch (config.kind) {
    case OptimizerKind::kSGD: return sgd_step(state, theta, g, config);
    case OptimizerKind::kSGDM: return sgdm_step(state, theta, g, config);
    case OptimizerKind::kAdam:
    case OptimizerKind::kNadam:
    case OptimizerKind::kAdamW: return adam_step(state, theta, g, config, config.kind);
    case OptimizerKind::kAdaMax: return adamax_step(state, theta, g, config);
    case OptimizerKind::kAdaBound: return adabound_step(state, theta, g, config);
  }
  throw Error(ErrorCode::kInvalidVariant, "unknown optimizer kind");
}

}  // namespace optbench
