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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "permcipher/error.hpp"

namespace permcipher {

inline constexpr double kDefaultEpsilon = 1e-6;

/// Per-position rank shifts of a permutation key.
///
/// `signed_shift[i] = i - map[i]` (0-based, identical in 1-based terms);
/// `absolute[i]` is its magnitude with zeros replaced by a strictly
/// positive epsilon so that power means with alpha <= 0 stay defined.
struct DisplacementVector {
  std::vector<long long> signed_shift;
  std::vector<double> absolute;
};

/// A bijection on positions 0..n-1 in one-line notation.
///
/// `source_of(i)` is the position (within a sorted sequence) whose value
/// lands at position i after application. Immutable after construction;
/// safe to share across threads.
class PermutationKey {
 public:
  /// Validates that `map` is a bijection on {0..n-1} with n >= 2.
  explicit PermutationKey(std::vector<std::size_t> map);

  static PermutationKey identity(std::size_t n);

  /// Uniform over the n! permutations; deterministic per seed.
  static PermutationKey random(std::size_t n, std::uint64_t seed);

  /// Builds a key from 1-based one-line notation (serialized form).
  static PermutationKey from_one_line(const std::vector<std::size_t>& one_based);

  std::size_t size() const { return map_.size(); }
  std::size_t source_of(std::size_t position) const { return map_[position]; }
  const std::vector<std::size_t>& map() const { return map_; }

  /// 1-based one-line notation, for serialization and display.
  std::vector<std::size_t> one_line() const;

  PermutationKey inverse() const;

  template <typename T>
  std::vector<T> apply(const std::vector<T>& values) const {
    if (values.size() != map_.size())
      throw DimensionError("apply: sequence length " + std::to_string(values.size()) +
                           " does not match key size " + std::to_string(map_.size()));
    std::vector<T> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < map_.size(); ++i) out.push_back(values[map_[i]]);
    return out;
  }

  std::vector<long long> signed_displacement() const;
  DisplacementVector displacement(double epsilon = kDefaultEpsilon) const;

  /// Recovers a key from its signed displacement vector (the encoding is
  /// bijective: map[i] = i - signed[i]).
  static PermutationKey from_signed_displacement(const std::vector<long long>& signed_shift);

  bool is_identity() const;
  bool operator==(const PermutationKey& other) const { return map_ == other.map_; }

 private:
  std::vector<std::size_t> map_;
};

/// `apply(compose(outer, inner), s) == apply(outer, apply(inner, s))`.
PermutationKey compose(const PermutationKey& outer, const PermutationKey& inner);

/// One permutation key per attribute, all of equal size.
struct KeyGroup {
  std::vector<PermutationKey> keys;

  KeyGroup() = default;
  explicit KeyGroup(std::vector<PermutationKey> ks);

  static KeyGroup identity(std::size_t n, std::size_t p);
  static KeyGroup random(std::size_t n, std::size_t p, std::uint64_t seed);

  std::size_t n() const { return keys.empty() ? 0 : keys.front().size(); }
  std::size_t p() const { return keys.size(); }

  bool operator==(const KeyGroup& other) const { return keys == other.keys; }
};

/// Per-attribute composition of two key groups.
KeyGroup compose(const KeyGroup& outer, const KeyGroup& inner);

/// splitmix64 step; used to derive per-stage seeds from one root seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

}  // namespace permcipher
