// Copyright 2026 The permcipher Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <vector>

#include "permcipher/dataset.hpp"
#include "permcipher/perm.hpp"

namespace permcipher {

enum class RankDirection { kAscending, kDescending };

/// Ranks 1..n. Descending assigns rank 1 to the largest value, ascending
/// to the smallest. Ties are broken by earlier record order getting the
/// better (smaller) rank.
std::vector<std::size_t> ranks(const std::vector<double>& values, RankDirection direction);

/// The key that sorts `values` ascending when applied; stable on ties.
PermutationKey sort_key(const std::vector<double>& values);

/// The dataset Z: per attribute, the values of X reordered so that Z's
/// rank vector equals Y's. Each column of Z keeps X's exact marginal.
Dataset reverse_map(const Dataset& x, const Dataset& y);

/// Recovers the per-attribute permutation keys (in sorted rank space)
/// such that encrypt(x, keys) == reverse_map(x, y).
KeyGroup extract_key_group(const Dataset& x, const Dataset& y);

/// E = Y - reverse_map(X, Y), column-major. Adding it back to Z
/// reproduces Y exactly and never changes a rank.
std::vector<std::vector<double>> residual_noise(const Dataset& x, const Dataset& y);

/// Per attribute: stable ascending sort, apply the key, un-sort.
/// Record ids are carried through unchanged.
Dataset encrypt(const Dataset& x, const KeyGroup& keys);

/// Noise that can never re-rank `values`: each record's bound is
/// scale * half the gap to its nearest distinct neighbor, and tied
/// records get zero noise. scale must lie in (0, 1).
std::vector<double> rank_preserving_noise(const std::vector<double>& values, std::uint64_t seed,
                                          double scale);

}  // namespace permcipher
