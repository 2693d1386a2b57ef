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

#ifndef OPTBENCH_RNG_HPP
#define OPTBENCH_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace optbench {

using Rng = std::mt19937_64;

/// Derives an independent seed from a parent seed and a label. Stable across
/// platforms and runs (FNV-1a over the label, then a splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label);
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label,
                          std::uint64_t index);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace optbench

#endif  // OPTBENCH_RNG_HPP
