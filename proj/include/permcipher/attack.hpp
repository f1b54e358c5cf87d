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

namespace permcipher {

/// Anonymized data as the attacker sees it: rows shuffled by a hidden
/// permutation and re-labeled with opaque ids. `truth[r]` maps shuffled
/// row r back to its original row, for scoring only.
struct ShuffledDataset {
  Dataset data;
  std::vector<std::size_t> truth;
};

ShuffledDataset shuffle_records(const Dataset& y, std::uint64_t seed);

enum class LinkageMethod { kRank, kDistance };
enum class LinkageStrategy { kGreedy, kOptimalAssignment };

struct LinkageResult {
  std::vector<std::size_t> assignment;  // shuffled row -> claimed original row
  double correct_rate = 0.0;
  LinkageMethod method = LinkageMethod::kRank;
  LinkageStrategy strategy = LinkageStrategy::kGreedy;
};

/// Rank linkage: cost(i, r) = sum_j |rank_Xj(i) - rank_Yj(r)|.
/// Distance linkage: Euclidean distance between standardized tuples.
/// Greedy links each shuffled record to its minimum-cost original (ties
/// to the lowest original index); optimal assignment minimizes total
/// cost injectively.
LinkageResult link_records(const Dataset& x, const ShuffledDataset& y, LinkageMethod method,
                           LinkageStrategy strategy);

}  // namespace permcipher
