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


#include "optbench/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "optbench/error.hpp"

namespace optbench {

std::string_view to_string(TaskName name) {
  switch (name) {
    case TaskName::kSst2Like: return "sst2_like";
    case TaskName::kMrpcLike: return "mrpc_like";
    case TaskName::kColaLike: return "cola_like";
    case TaskName::kStsbLike: return "stsb_like";
    case TaskName::kMnliLike: return "mnli_like";
  }
  return "?";
}

TaskName parse_task_name(std::string_view name) {
  for (TaskName t : kAllTasks) {
    if (to_string(t) == name) return t;
  }
  throw Error(ErrorCode::kInvalidConfig, "unknown task '" + std::string(name) + "'");
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kLogistic: return "logistic";
    case ModelKind::kMlp: return "mlp";
    case ModelKind::kLinear: return "linear";
  }
  return "?";
}

TaskSpec task_spec(TaskName name) {
  TaskSpec s;
  s.name = name;
  switch (name) {
    case TaskName::kSst2Like:
      // 15k / 1.5k / 1.5k out of 18k, 55% positive.
      s.n_classes = 2;
      s.class_skew = {0.45, 0.55};
      s.metric = MetricKind::kAccuracy;
      s.model = ModelKind::kMlp;
      s.split_ratios = {15.0 / 18.0, 1.5 / 18.0, 1.5 / 18.0};
      s.default_size = 1800;
      s.resample_per_split = true;
      break;
    case TaskName::kMrpcLike:
      s.n_classes = 2;
      s.class_skew = {0.33, 0.67};
      s.metric = MetricKind::kMacroF1;
      s.model = ModelKind::kLogistic;
      s.feature_scale = 1000.0;
      s.default_size = 5800;
      break;
    case TaskName::kColaLike:
      s.n_classes = 2;
      s.class_skew = {0.30, 0.70};
      s.metric = MetricKind::kMatthews;
      s.model = ModelKind::kLogistic;
      s.feature_scale = 1000.0;
      s.default_size = 9600;
      break;
    case TaskName::kStsbLike:
      s.n_classes = 0;
      s.metric = MetricKind::kPearson;
      s.model = ModelKind::kLinear;
      s.noise = 0.5;
      s.default_size = 7200;
      break;
    case TaskName::kMnliLike:
      // 50k / 9.8k / 9.8k, balanced three-way.
      s.n_classes = 3;
      s.class_skew = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
      s.metric = MetricKind::kAccuracy;
      s.model = ModelKind::kMlp;
      s.split_ratios = {50.0 / 69.6, 9.8 / 69.6, 9.8 / 69.6};
      s.default_size = 6960;
      s.resample_per_split = true;
      break;
  }
  return s;
}

namespace {

/// Integer apportionment of `total` by `weights` (largest remainder, ties to
/// the lower index).
std::vector<std::size_t> apportion(std::size_t total, std::span<const double> weights) {
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::size_t> counts(weights.size());
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double exact = static_cast<double>(total) * weights[i] / wsum;
    counts[i] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[i];
    remainders.emplace_back(exact - std::floor(exact), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) {
    counts[remainders[k % remainders.size()].second] += 1;
  }
  return counts;
}

std::vector<double> unit_vector(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& x : v) {
      x = normal(rng);
      norm += x * x;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;
  return v;
}

}  // namespace

Dataset make_dataset(const TaskSpec& spec, std::size_t size, std::uint64_t seed) {
  if (size < 50) {
    throw Error(ErrorCode::kInvalidArgument,
                "dataset size must be >= 50, got " + std::to_string(size));
  }
  if (spec.feature_dim == 0) {
    throw Error(ErrorCode::kInvalidDimension, "feature_dim must be >= 1");
  }
  Dataset data;
  data.spec = spec;
  data.dim = spec.feature_dim;
  data.features.resize(size * data.dim);
  data.targets.resize(size);
  const std::size_t d = data.dim;
  Rng rng(derive_seed(seed, "dataset"));
  std::normal_distribution<double> normal(0.0, 1.0);

  if (spec.is_regression()) {
    const std::vector<double> w = unit_vector(d, rng);
    std::vector<double> z(size);
    for (std::size_t i = 0; i < size; ++i) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const double x = normal(rng);
        data.features[i * d + j] = spec.feature_scale * x;
        dot += w[j] * x;
      }
      z[i] = dot + spec.noise * normal(rng);
    }
    const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
    const double zmin = *lo;
    const double span = *hi - *lo;
    for (std::size_t i = 0; i < size; ++i) {
      const double y = kScoreMin + (kScoreMax - kScoreMin) * (z[i] - zmin) / span;
      data.targets[i] = std::clamp(y, kScoreMin, kScoreMax);
    }
    return data;
  }

  if (spec.n_classes < 2 ||
      spec.class_skew.size() != static_cast<std::size_t>(spec.n_classes)) {
    throw Error(ErrorCode::kInvalidArgument, "class_skew must list every class");
  }
  const auto nc = static_cast<std::size_t>(spec.n_classes);
  std::vector<std::vector<double>> means(nc);
  if (nc == 2) {
    // Opposite means keep the class distance exactly `separation`.
    const std::vector<double> u = unit_vector(d, rng);
    means[0].resize(d);
    means[1].resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      means[0][j] = -0.5 * spec.separation * u[j];
      means[1][j] = 0.5 * spec.separation * u[j];
    }
  } else {
    for (auto& m : means) {
      m = unit_vector(d, rng);
      for (double& x : m) x *= spec.separation / std::sqrt(2.0);
    }
  }

  const std::vector<std::size_t> counts = apportion(size, spec.class_skew);
  std::vector<int> labels;
  labels.reserve(size);
  for (std::size_t c = 0; c < nc; ++c) labels.insert(labels.end(), counts[c], static_cast<int>(c));
  std::shuffle(labels.begin(), labels.end(), rng);

  for (std::size_t i = 0; i < size; ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    data.targets[i] = static_cast<double>(labels[i]);
    for (std::size_t j = 0; j < d; ++j) {
      data.features[i * d + j] =
          spec.feature_scale * (means[c][j] + spec.noise * normal(rng));
    }
  }
  return data;
}

std::vector<int> strata_of(const Dataset& data) {
  const std::size_t n = data.size();
  std::vector<int> strata(n);
  if (!data.spec.is_regression()) {
    for (std::size_t i = 0; i < n; ++i) strata[i] = data.label(i);
    return strata;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return data.targets[a] < data.targets[b];
  });
  for (std::size_t rank = 0; rank < n; ++rank) {
    strata[order[rank]] = static_cast<int>(rank * 5 / n);
  }
  return strata;
}

DataSplit stratified_split(const Dataset& data, std::array<double, 3> ratios,
                           std::uint64_t split_seed) {
  for (double r : ratios) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw Error(ErrorCode::kInvalidArgument, "split ratios must be non-negative");
    }
  }
  if (std::abs(ratios[0] + ratios[1] + ratios[2] - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "split ratios must sum to 1");
  }
  const std::vector<int> strata = strata_of(data);
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < strata.size(); ++i) groups[strata[i]].push_back(i);
  for (const auto& [id, members] : groups) {
    if (members.size() < 3) {
      const std::string what = data.spec.is_regression() ? "target quintile " : "class ";
      throw Error(ErrorCode::kPrecondition, what + std::to_string(id) + " has only " +
                                                std::to_string(members.size()) +
                                                " members (need >= 3)");
    }
  }

  Rng rng(split_seed);
  std::vector<std::vector<std::size_t>> members;
  for (auto& [id, idx] : groups) {
    std::shuffle(idx.begin(), idx.end(), rng);
    members.push_back(idx);
  }

  // Partition totals first, then a per-stratum rounding (floor or ceil of the
  // exact share in every cell) whose column sums hit those totals. Filling the
  // leftover units greedily into the partitions with the most remaining demand
  // always succeeds for such tables.
  const std::size_t g = members.size();
  const std::vector<std::size_t> totals = apportion(data.size(), ratios);
  std::vector<std::array<std::size_t, 3>> cell(g);
  std::vector<std::array<double, 3>> frac(g);
  std::vector<std::size_t> leftover(g);
  std::array<long, 3> demand{};
  for (std::size_t p = 0; p < 3; ++p) demand[p] = static_cast<long>(totals[p]);
  for (std::size_t c = 0; c < g; ++c) {
    std::size_t used = 0;
    for (std::size_t p = 0; p < 3; ++p) {
      const double exact = static_cast<double>(members[c].size()) * ratios[p];
      cell[c][p] = static_cast<std::size_t>(std::floor(exact));
      frac[c][p] = exact - std::floor(exact);
      used += cell[c][p];
      demand[p] -= static_cast<long>(cell[c][p]);
    }
    leftover[c] = members[c].size() - used;
  }
  std::vector<std::size_t> order(g);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return leftover[a] > leftover[b]; });
  for (std::size_t c : order) {
    std::array<bool, 3> taken{};
    for (std::size_t k = 0; k < leftover[c]; ++k) {
      int best = -1;
      for (int p = 0; p < 3; ++p) {
        if (taken[p] || demand[p] <= 0) continue;
        if (best < 0 || demand[p] > demand[best] ||
            (demand[p] == demand[best] && frac[c][p] > frac[c][best])) {
          best = p;
        }
      }
      if (best < 0) {
        throw Error(ErrorCode::kPrecondition, "stratified rounding failed");
      }
      taken[best] = true;
      cell[c][best] += 1;
      demand[best] -= 1;
    }
  }

  DataSplit split;
  split.split_seed = split_seed;
  std::array<std::vector<std::size_t>*, 3> parts = {&split.train, &split.dev, &split.test};
  for (std::size_t c = 0; c < g; ++c) {
    std::size_t at = 0;
    for (std::size_t p = 0; p < 3; ++p) {
      parts[p]->insert(parts[p]->end(), members[c].begin() + static_cast<long>(at),
                       members[c].begin() + static_cast<long>(at + cell[c][p]));
      at += cell[c][p];
    }
  }
  for (auto* part : parts) std::sort(part->begin(), part->end());
  return split;
}

MinibatchSampler::MinibatchSampler(std::span<const std::size_t> train,
                                   std::size_t batch_size, std::uint64_t seed)
    : order_(train.begin(), train.end()), batch_size_(batch_size), rng_(seed) {
  if (batch_size == 0) {
    throw Error(ErrorCode::kInvalidArgument, "batch size must be >= 1");
  }
  if (batch_size > order_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "batch size " + std::to_string(batch_size) + " exceeds training set of " +
                    std::to_string(order_.size()));
  }
}

std::size_t MinibatchSampler::batches_per_epoch() const {
  return (order_.size() + batch_size_ - 1) / batch_size_;
}

std::vector<std::vector<std::size_t>> MinibatchSampler::next_epoch() {
  std::shuffle(order_.begin(), order_.end(), rng_);
  std::vector<std::vector<std::size_t>> batches;
  batches.reserve(batches_per_epoch());
  for (std::size_t at = 0; at < order_.size(); at += batch_size_) {
    const std::size_t end = std::min(order_.size(), at + batch_size_);
    batches.emplace_back(order_.begin() + static_cast<long>(at),
                         order_.begin() + static_cast<long>(end));
  }
  return batches;
}

}  // namespace optbench
