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


#ifndef OPTBENCH_TUNER_HPP
#define OPTBENCH_TUNER_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "optbench/optimizers.hpp"
#include "optbench/rng.hpp"

namespace optbench {

/// Which hyperparameters a study may change: none, only the learning rate, or
/// every searched one.
enum class Regime { kDefaults, kLrOnly, kFull };

inline constexpr std::size_t kMaxTrials = 30;

std::string_view to_string(Regime regime);
/// Accepts "defaults", "lr-only" / "lr_only", "full".
Regime parse_regime(std::string_view text);

enum class Scale { kLinear, kLog };

struct ParamRange {
  std::string name;  // an OptimizerConfig key
  double low;
  double high;
  Scale scale;
  double default_value;

  bool pinned() const { return low == high; }
};

struct SpaceSpec {
  OptimizerKind kind;
  Regime regime;
  OptimizerConfig defaults;
  std::vector<ParamRange> params;

  const ParamRange* find(std::string_view name) const;
  /// Defaults with every listed parameter overwritten by `values` (same order
  /// as `params`).
  OptimizerConfig make_config(std::span<const double> values) const;
};

/// Searched ranges and defaults per optimizer. Pinned entries have low == high
/// == the default. Construction checks that every adaptive optimizer's default
/// learning rate lies strictly above its searched range.
SpaceSpec search_space(OptimizerKind kind, Regime regime);

enum class TrialStatus { kCompleted, kPruned, kFailed };

std::string_view to_string(TrialStatus status);

struct TrialRecord {
  OptimizerConfig config;
  std::vector<double> epoch_scores;  // dev score after each finished epoch
  TrialStatus status = TrialStatus::kCompleted;
  std::size_t best_epoch = 0;
  double best_dev = -std::numeric_limits<double>::infinity();  // -inf if failed
};

struct StudyRecord {
  OptimizerKind optimizer = OptimizerKind::kAdam;
  Regime regime = Regime::kFull;
  std::uint64_t sampler_seed = 0;
  std::vector<TrialRecord> trials;
};

/// TPE-style proposal. The first 10 trials are (log-)uniform draws; afterwards
/// trials are split at the median dev score, a Parzen estimator is fitted per
/// dimension to each half, and the best of 24 draws from the good-half density
/// under the good/bad density ratio is returned. Pinned dimensions always take
/// their default. A study already holding 30 trials throws Error(kStudyFull).
OptimizerConfig suggest(const StudyRecord& study, const SpaceSpec& space, Rng& rng);

/// Median pruning: true iff epoch >= 1, at least 5 completed trials have a
/// score at `epoch`, and `score` is strictly below their median.
bool should_prune(const StudyRecord& study, const TrialRecord& trial, std::size_t epoch,
                  double score);

/// Index of the completed trial with the highest best_dev (earliest on ties).
/// Pruned and failed trials are skipped; none completed throws
/// Error(kNoViableTrial).
std::size_t best_trial_index(const StudyRecord& study);
const TrialRecord& best_trial(const StudyRecord& study);

/// Running maximum of best_dev over trials 1..k (failed trials count as -inf).
std::vector<double> best_so_far(const StudyRecord& study);

std::string study_to_json(const StudyRecord& study);
StudyRecord study_from_json(std::string_view text);

}  // namespace optbench

#endif  // OPTBENCH_TUNER_HPP
