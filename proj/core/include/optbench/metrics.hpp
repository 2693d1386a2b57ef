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


#ifndef OPTBENCH_METRICS_HPP
#define OPTBENCH_METRICS_HPP

#include <cstddef>
#include <span>
#include <string_view>

namespace optbench {

enum class MetricKind { kAccuracy, kMacroF1, kMatthews, kPearson };

std::string_view to_string(MetricKind kind);

/// Accuracy and macro-F1 live in [0, 1]; the correlations in [-1, 1].
bool is_percent_scale(MetricKind kind);

struct MetricValue {
  MetricKind kind;
  double value;
};

double accuracy(std::span<const int> preds, std::span<const int> golds);

/// Unweighted mean of per-class F1. A class that is never predicted and never
/// present (P + R == 0) contributes 0.
double macro_f1(std::span<const int> preds, std::span<const int> golds, int n_classes);

/// Binary labels only. A zero denominator (constant row or column) yields 0.
double matthews_corr(std::span<const int> preds, std::span<const int> golds);

/// Sample Pearson correlation. Either sequence constant yields 0.
double pearson_corr(std::span<const double> preds, std::span<const double> golds);

}  // namespace optbench

#endif  // OPTBENCH_METRICS_HPP
