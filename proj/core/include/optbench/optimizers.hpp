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


#ifndef OPTBENCH_OPTIMIZERS_HPP
#define OPTBENCH_OPTIMIZERS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace optbench {

/// Flat parameter (or gradient, or moment) vector.
using ParamVector = std::vector<double>;

enum class OptimizerKind { kSGD, kSGDM, kAdam, kNadam, kAdamW, kAdaMax, kAdaBound };

inline constexpr std::array<OptimizerKind, 7> kAllOptimizers = {
    OptimizerKind::kSGD,   OptimizerKind::kSGDM,   OptimizerKind::kAdam,
    OptimizerKind::kNadam, OptimizerKind::kAdamW,  OptimizerKind::kAdaMax,
    OptimizerKind::kAdaBound};

std::string_view to_string(OptimizerKind kind);
/// Case-insensitive; throws Error(kInvalidConfig) on unknown names.
OptimizerKind parse_optimizer_kind(std::string_view name);
/// SGD and SGDM are the non-adaptive ones.
bool is_adaptive(OptimizerKind kind);

/// Hyperparameters for any of the seven optimizers. Fields the selected kind
/// does not use are kept as-is so a config round-trips unchanged.
struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kAdam;
  double epsilon = 1e-3;   // learning rate
  double rho1 = 0.9;       // first-moment decay
  double rho2 = 0.999;     // second-moment decay
  double delta = 1e-8;     // numerical constant
  double alpha = 0.0;      // SGDM momentum; Nadam momentum strength (unused)
  double lambda = 0.01;    // AdamW decay
  double eps_star = 0.1;   // AdaBound final rate
  double gamma = 1e-3;     // AdaBound bound-convergence speed

  friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

/// Published defaults for `kind`.
OptimizerConfig default_config(OptimizerKind kind);

/// Throws Error(kInvalidConfig) naming the first out-of-range field.
void validate(const OptimizerConfig& config);

/// Key-value text form: one `key = value` per line, `#` comments, blank lines
/// ignored. Keys are exactly kind, epsilon, rho1, rho2, delta, alpha, lambda,
/// eps_star, gamma. Unknown or duplicate keys are rejected; missing keys take
/// the kind's defaults.
std::string serialize_config(const OptimizerConfig& config);
OptimizerConfig parse_config(std::string_view text);

struct OptimizerState {
  std::uint64_t t = 0;
  ParamVector s;  // first moment
  ParamVector r;  // second moment (AdaMax: running max of |g|)
  ParamVector v;  // SGDM velocity

  friend bool operator==(const OptimizerState&, const OptimizerState&) = default;
};

/// Zero state of length `dim`; dim == 0 throws Error(kInvalidDimension).
OptimizerState init_state(const OptimizerConfig& config, std::size_t dim);

struct StepResult {
  ParamVector theta;
  OptimizerState state;
};

// Each step takes the state *before* the update and returns fresh copies; the
// inputs are never modified. All throw Error(kDimensionMismatch) on length
// disagreement and Error(kNonFinite) for non-finite gradients or results.

StepResult sgd_step(const OptimizerState& state, std::span<const double> theta,
                    std::span<const double> g, const OptimizerConfig& config);

StepResult sgdm_step(const OptimizerState& state, std::span<const double> theta,
                     std::span<const double> g, const OptimizerConfig& config);

/// Shared Adam/Nadam/AdamW update. `variant` must be one of those three,
/// otherwise Error(kInvalidVariant). AdamW subtracts lambda * theta_{t-1}
/// (unscaled by the learning rate) after the adaptive step.
StepResult adam_step(const OptimizerState& state, std::span<const double> theta,
                     std::span<const double> g, const OptimizerConfig& config,
                     OptimizerKind variant);

/// r' = max(rho2 * r, |g|). A coordinate with r' == 0 has seen only zero
/// gradients and is left unchanged.
StepResult adamax_step(const OptimizerState& state, std::span<const double> theta,
                       std::span<const double> g, const OptimizerConfig& config);

struct LearningRateBounds {
  double lo;
  double hi;
};

/// lo(t) = eps* (1 - 1/(gamma t + 1)), hi(t) = eps* (1 + 1/(gamma t)).
/// t == 0 throws Error(kPrecondition).
LearningRateBounds adabound_bounds(std::uint64_t t, const OptimizerConfig& config);

/// eta = clip(eps / (sqrt(r') + delta), lo(t'), hi(t')); theta' = theta - eta * s'.
StepResult adabound_step(const OptimizerState& state, std::span<const double> theta,
                         std::span<const double> g, const OptimizerConfig& config);

/// Dispatches on config.kind.
StepResult step(const OptimizerState& state, std::span<const double> theta,
                std::span<const double> g, const OptimizerConfig& config);

}  // namespace optbench

#endif  // OPTBENCH_OPTIMIZERS_HPP
