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


#include "optbench/tuner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "optbench/error.hpp"

namespace optbench {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kDefaults: return "defaults";
    case Regime::kLrOnly: return "lr-only";
    case Regime::kFull: return "full";
  }
  return "?";
}

Regime parse_regime(std::string_view text) {
  if (text == "defaults") return Regime::kDefaults;
  if (text == "lr-only" || text == "lr_only") return Regime::kLrOnly;
  if (text == "full") return Regime::kFull;
  throw Error(ErrorCode::kInvalidConfig, "unknown regime '" + std::string(text) + "'");
}

std::string_view to_string(TrialStatus status) {
  switch (status) {
    case TrialStatus::kCompleted: return "completed";
    case TrialStatus::kPruned: return "pruned";
    case TrialStatus::kFailed: return "failed";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Search spaces

const ParamRange* SpaceSpec::find(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

namespace {

double* config_field(OptimizerConfig& c, std::string_view name) {
  if (name == "epsilon") return &c.epsilon;
  if (name == "rho1") return &c.rho1;
  if (name == "rho2") return &c.rho2;
  if (name == "delta") return &c.delta;
  if (name == "alpha") return &c.alpha;
  if (name == "lambda") return &c.lambda;
  if (name == "eps_star") return &c.eps_star;
  if (name == "gamma") return &c.gamma;
  throw Error(ErrorCode::kInvalidArgument, "unknown hyperparameter '" + std::string(name) + "'");
}

double config_value(const OptimizerConfig& c, std::string_view name) {
  OptimizerConfig copy = c;
  return *config_field(copy, name);
}

}  // namespace

OptimizerConfig SpaceSpec::make_config(std::span<const double> values) const {
  if (values.size() != params.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one value per search dimension expected");
  }
  OptimizerConfig c = defaults;
  for (std::size_t i = 0; i < params.size(); ++i) *config_field(c, params[i].name) = values[i];
  return c;
}

SpaceSpec search_space(OptimizerKind kind, Regime regime) {
  SpaceSpec space;
  space.kind = kind;
  space.regime = regime;
  space.defaults = default_config(kind);
  const OptimizerConfig& d = space.defaults;

  auto add = [&](const char* name, double low, double high, Scale scale, double def) {
    space.params.push_back({name, low, high, scale, def});
  };
  if (is_adaptive(kind)) {
    add("epsilon", 1e-7, 1e-5, Scale::kLog, d.epsilon);
    add("rho1", 0.8, 0.95, Scale::kLinear, d.rho1);
    add("rho2", 0.9, 0.99999, Scale::kLinear, d.rho2);
    add("delta", 1e-9, 1e-7, Scale::kLog, d.delta);
    if (kind == OptimizerKind::kNadam) add("alpha", 1e-4, 1e-2, Scale::kLog, d.alpha);
    if (kind == OptimizerKind::kAdaBound) {
      add("eps_star", 1e-2, 1e-1, Scale::kLinear, d.eps_star);
      add("gamma", 1e-4, 2e-3, Scale::kLog, d.gamma);
    }
    // Fine-tuning convention: the searched learning rates sit below the
    // published default.
    if (!(d.epsilon > space.params.front().high)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "default learning rate of " + std::string(to_string(kind)) +
                      " must lie above its search range");
    }
  } else {
    add("epsilon", 1e-7, 1e-3, Scale::kLog, d.epsilon);
    if (kind == OptimizerKind::kSGDM) add("alpha", 0.7, 0.9999, Scale::kLinear, d.alpha);
  }

  for (auto& p : space.params) {
    const bool free = regime == Regime::kFull ||
                      (regime == Regime::kLrOnly && p.name == "epsilon");
    if (!free) p.low = p.high = p.default_value;
  }
  return space;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

constexpr std::size_t kStartupTrials = 10;
constexpr std::size_t kCandidates = 24;
constexpr double kPi = 3.14159265358979323846;

struct UnitMap {
  double a;
  double b;
  Scale scale;

  static UnitMap of(const ParamRange& p) {
    if (p.scale == Scale::kLog) return {std::log(p.low), std::log(p.high), Scale::kLog};
    return {p.low, p.high, Scale::kLinear};
  }
  double to_unit(double x) const {
    const double f = scale == Scale::kLog ? std::log(x) : x;
    return std::clamp((f - a) / (b - a), 0.0, 1.0);
  }
  double from_unit(double u) const {
    const double f = a + u * (b - a);
    return scale == Scale::kLog ? std::exp(f) : f;
  }
};

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// One-dimensional Parzen estimator on [0, 1]: a truncated Gaussian per
/// observation plus a broad prior component, equally weighted.
class Parzen {
 public:
  explicit Parzen(std::vector<double> points) {
    std::sort(points.begin(), points.end());
    const std::size_t n = points.size();
    const double min_bw = 1.0 / std::min(100.0, static_cast<double>(n) + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double left = i == 0 ? points[i] : points[i] - points[i - 1];
      const double right = i + 1 == n ? 1.0 - points[i] : points[i + 1] - points[i];
      mu_.push_back(points[i]);
      sigma_.push_back(std::clamp(std::max(left, right), min_bw, 1.0));
    }
    mu_.push_back(0.5);
    sigma_.push_back(1.0);
    for (std::size_t k = 0; k < mu_.size(); ++k) {
      mass_.push_back(normal_cdf((1.0 - mu_[k]) / sigma_[k]) - normal_cdf(-mu_[k] / sigma_[k]));
    }
  }

  double log_pdf(double u) const {
    double p = 0.0;
    for (std::size_t k = 0; k < mu_.size(); ++k) {
      const double z = (u - mu_[k]) / sigma_[k];
      p += std::exp(-0.5 * z * z) / (sigma_[k] * std::sqrt(2.0 * kPi) * mass_[k]);
    }
    return std::log(p / static_cast<double>(mu_.size()));
  }

  double sample(Rng& rng) const {
    std::uniform_int_distribution<std::size_t> pick(0, mu_.size() - 1);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t k = pick(rng);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const double u = mu_[k] + sigma_[k] * normal(rng);
      if (u >= 0.0 && u <= 1.0) return u;
    }
    return std::clamp(mu_[k], 0.0, 1.0);
  }

 private:
  std::vector<double> mu_;
  std::vector<double> sigma_;
  std::vector<double> mass_;
};

double clamp_to(const ParamRange& p, double x) { return std::clamp(x, p.low, p.high); }

}  // namespace

OptimizerConfig suggest(const StudyRecord& study, const SpaceSpec& space, Rng& rng) {
  if (study.trials.size() >= kMaxTrials) {
    throw Error(ErrorCode::kStudyFull, "study already holds " +
                                           std::to_string(study.trials.size()) + " trials");
  }
  std::vector<double> values(space.params.size());
  std::vector<std::size_t> free_dims;
  for (std::size_t i = 0; i < space.params.size(); ++i) {
    if (space.params[i].pinned()) {
      values[i] = space.params[i].default_value;
    } else {
      free_dims.push_back(i);
    }
  }
  if (free_dims.empty()) return space.make_config(values);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (study.trials.size() < kStartupTrials) {
    for (std::size_t i : free_dims) {
      const auto& p = space.params[i];
      values[i] = clamp_to(p, UnitMap::of(p).from_unit(unit(rng)));
    }
    return space.make_config(values);
  }

  // Rank trials by dev score, best first; the upper half is "good".
  std::vector<std::size_t> order(study.trials.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return study.trials[a].best_dev > study.trials[b].best_dev;
  });
  const std::size_t n_good = std::max<std::size_t>(1, order.size() / 2);

  std::vector<Parzen> good;
  std::vector<Parzen> bad;
  for (std::size_t i : free_dims) {
    const auto& p = space.params[i];
    const UnitMap map = UnitMap::of(p);
    std::vector<double> g;
    std::vector<double> b;
    for (std::size_t r = 0; r < order.size(); ++r) {
      const double x = config_value(study.trials[order[r]].config, p.name);
      (r < n_good ? g : b).push_back(map.to_unit(x));
    }
    good.emplace_back(std::move(g));
    bad.emplace_back(std::move(b));
  }

  std::vector<double> best_u(free_dims.size());
  double best_score = -std::numeric_limits<double>::infinity();
  std::vector<double> u(free_dims.size());
  for (std::size_t c = 0; c < kCandidates; ++c) {
    double score = 0.0;
    for (std::size_t k = 0; k < free_dims.size(); ++k) {
      u[k] = good[k].sample(rng);
      score += good[k].log_pdf(u[k]) - bad[k].log_pdf(u[k]);
    }
    if (score > best_score) {
      best_score = score;
      best_u = u;
    }
  }
  for (std::size_t k = 0; k < free_dims.size(); ++k) {
    const auto& p = space.params[free_dims[k]];
    values[free_dims[k]] = clamp_to(p, UnitMap::of(p).from_unit(best_u[k]));
  }
  return space.make_config(values);
}

// ---------------------------------------------------------------------------
// Pruning and selection

namespace {

constexpr std::size_t kMinCompletedForPruning = 5;
constexpr std::size_t kWarmupEpochs = 1;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

bool should_prune(const StudyRecord& study, const TrialRecord& /*trial*/, std::size_t epoch,
                  double score) {
  if (epoch < kWarmupEpochs) return false;
  std::vector<double> peers;
  for (const auto& t : study.trials) {
    if (t.status == TrialStatus::kCompleted && t.epoch_scores.size() > epoch) {
      peers.push_back(t.epoch_scores[epoch]);
    }
  }
  if (peers.size() < kMinCompletedForPruning) return false;
  return score < median(std::move(peers));
}

std::size_t best_trial_index(const StudyRecord& study) {
  std::size_t best = study.trials.size();
  for (std::size_t i = 0; i < study.trials.size(); ++i) {
    const auto& t = study.trials[i];
    if (t.status != TrialStatus::kCompleted) continue;
    if (best == study.trials.size() || t.best_dev > study.trials[best].best_dev) best = i;
  }
  if (best == study.trials.size()) {
    throw Error(ErrorCode::kNoViableTrial, "study has no completed trial");
  }
  return best;
}

const TrialRecord& best_trial(const StudyRecord& study) {
  return study.trials[best_trial_index(study)];
}

std::vector<double> best_so_far(const StudyRecord& study) {
  std::vector<double> out;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& t : study.trials) {
    if (t.status == TrialStatus::kCompleted) best = std::max(best, t.best_dev);
    out.push_back(best);
  }
  return out;
}

}  // namespace optbench
