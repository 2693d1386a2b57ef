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


#include "optbench/metrics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "optbench/error.hpp"

namespace optbench {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::kAccuracy: return "accuracy";
    case MetricKind::kMacroF1: return "macro_f1";
    case MetricKind::kMatthews: return "matthews";
    case MetricKind::kPearson: return "pearson";
  }
  return "?";
}

bool is_percent_scale(MetricKind kind) {
  return kind == MetricKind::kAccuracy || kind == MetricKind::kMacroF1;
}

namespace {

void require_same_nonempty(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) throw Error(ErrorCode::kInvalidArgument, "empty metric input");
  if (a != b) {
    throw Error(ErrorCode::kDimensionMismatch, "predictions and golds differ in length");
  }
}

}  // namespace

double accuracy(std::span<const int> preds, std::span<const int> golds) {
  require_same_nonempty(preds.size(), golds.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) hits += preds[i] == golds[i];
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double macro_f1(std::span<const int> preds, std::span<const int> golds, int n_classes) {
  require_same_nonempty(preds.size(), golds.size());
  if (n_classes < 1) throw Error(ErrorCode::kInvalidArgument, "n_classes must be >= 1");
  const auto nc = static_cast<std::size_t>(n_classes);
  std::vector<double> tp(nc, 0.0), fp(nc, 0.0), fn(nc, 0.0);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const int p = preds[i];
    const int y = golds[i];
    if (p < 0 || p >= n_classes || y < 0 || y >= n_classes) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label out of range at index " + std::to_string(i));
    }
    if (p == y) {
      tp[static_cast<std::size_t>(p)] += 1;
    } else {
      fp[static_cast<std::size_t>(p)] += 1;
      fn[static_cast<std::size_t>(y)] += 1;
    }
  }
  double sum = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    const double precision = tp[c] + fp[c] > 0 ? tp[c] / (tp[c] + fp[c]) : 0.0;
    const double recall = tp[c] + fn[c] > 0 ? tp[c] / (tp[c] + fn[c]) : 0.0;
    if (precision + recall > 0) sum += 2.0 * precision * recall / (precision + recall);
  }
  return sum / static_cast<double>(nc);
}

double matthews_corr(std::span<const int> preds, std::span<const int> golds) {
  require_same_nonempty(preds.size(), golds.size());
  double tp = 0, tn = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const int p = preds[i];
    const int y = golds[i];
    if ((p != 0 && p != 1) || (y != 0 && y != 1)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "Matthews correlation needs binary labels (index " +
                      std::to_string(i) + ")");
    }
    if (p == 1 && y == 1) tp += 1;
    else if (p == 0 && y == 0) tn += 1;
    else if (p == 1) fp += 1;
    else fn += 1;
  }
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(denom);
}

double pearson_corr(std::span<const double> preds, std::span<const double> golds) {
  if (preds.size() != golds.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "predictions and golds differ in length");
  }
  if (preds.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "Pearson correlation needs >= 2 points");
  }
  auto constant = [](std::span<const double> v) {
    for (double x : v) {
      if (x != v.front()) return false;
    }
    return true;
  };
  if (constant(preds) || constant(golds)) return 0.0;
  const double n = static_cast<double>(preds.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    mx += preds[i];
    my += golds[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const double dx = preds[i] - mx;
    const double dy = golds[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  const double r = sxy / std::sqrt(sxx * syy);
  // Rounding can push |r| a hair past 1.
  return std::fmax(-1.0, std::fmin(1.0, r));
}

}  // namespace optbench
