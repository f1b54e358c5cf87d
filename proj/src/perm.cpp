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

#include "permcipher/perm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace permcipher {

namespace {

void check_bijection(const std::vector<std::size_t>& map) {
  const std::size_t n = map.size();
  if (n < 2) throw InvalidSizeError("permutation key needs n >= 2, got n = " + std::to_string(n));
  std::vector<char> seen(n, 0);
  for (std::size_t v : map) {
    if (v >= n) throw ValidationError("permutation entry " + std::to_string(v + 1) + " out of range 1.." + std::to_string(n));
    if (seen[v]) throw ValidationError("repeated permutation entry " + std::to_string(v + 1));
    seen[v] = 1;
  }
}

}  // namespace

PermutationKey::PermutationKey(std::vector<std::size_t> map) : map_(std::move(map)) {
  check_bijection(map_);
}

PermutationKey PermutationKey::identity(std::size_t n) {
  if (n < 2) throw InvalidSizeError("identity key needs n >= 2, got n = " + std::to_string(n));
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  return PermutationKey(std::move(map));
}

PermutationKey PermutationKey::random(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidSizeError("random key needs n >= 2, got n = " + std::to_string(n));
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Fisher-Yates
  for (std::size_t i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i);
    std::swap(map[i], map[pick(rng)]);
  }
  return PermutationKey(std::move(map));
}

PermutationKey PermutationKey::from_one_line(const std::vector<std::size_t>& one_based) {
  std::vector<std::size_t> map;
  map.reserve(one_based.size());
  for (std::size_t v : one_based) {
    if (v == 0) throw ValidationError("one-line notation is 1-based; found entry 0");
    map.push_back(v - 1);
  }
  return PermutationKey(std::move(map));
}

std::vector<std::size_t> PermutationKey::one_line() const {
  std::vector<std::size_t> out;
  out.reserve(map_.size());
  for (std::size_t v : map_) out.push_back(v + 1);
  return out;
}

PermutationKey PermutationKey::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return PermutationKey(std::move(inv));
}

std::vector<long long> PermutationKey::signed_displacement() const {
  std::vector<long long> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i)
    out[i] = static_cast<long long>(i) - static_cast<long long>(map_[i]);
  return out;
}

DisplacementVector PermutationKey::displacement(double epsilon) const {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  DisplacementVector d;
  d.signed_shift = signed_displacement();
  d.absolute.reserve(d.signed_shift.size());
  for (long long s : d.signed_shift) {
    const double a = std::llabs(s);
    d.absolute.push_back(a > 0.0 ? a : epsilon);
  }
  return d;
}

PermutationKey PermutationKey::from_signed_displacement(const std::vector<long long>& signed_shift) {
  std::vector<std::size_t> map(signed_shift.size());
  for (std::size_t i = 0; i < signed_shift.size(); ++i) {
    const long long src = static_cast<long long>(i) - signed_shift[i];
    if (src < 0 || src >= static_cast<long long>(signed_shift.size()))
      throw ValidationError("signed displacement leads outside 1..n at position " + std::to_string(i + 1));
    map[i] = static_cast<std::size_t>(src);
  }
  return PermutationKey(std::move(map));
}

bool PermutationKey::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

PermutationKey compose(const PermutationKey& outer, const PermutationKey& inner) {
  if (outer.size() != inner.size())
    throw DimensionError("compose: key sizes differ (" + std::to_string(outer.size()) + " vs " +
                         std::to_string(inner.size()) + ")");
  std::vector<std::size_t> map(outer.size());
  for (std::size_t i = 0; i < outer.size(); ++i) map[i] = inner.source_of(outer.source_of(i));
  return PermutationKey(std::move(map));
}

KeyGroup::KeyGroup(std::vector<PermutationKey> ks) : keys(std::move(ks)) {
  if (keys.empty()) throw InvalidSizeError("key group needs p >= 1");
  for (const auto& k : keys)
    if (k.size() != keys.front().size())
      throw DimensionError("key group members must share the same n");
}

KeyGroup KeyGroup::identity(std::size_t n, std::size_t p) {
  if (p < 1) throw InvalidSizeError("key group needs p >= 1");
  return KeyGroup(std::vector<PermutationKey>(p, PermutationKey::identity(n)));
}

KeyGroup KeyGroup::random(std::size_t n, std::size_t p, std::uint64_t seed) {
  if (p < 1) throw InvalidSizeError("key group needs p >= 1");
  std::vector<PermutationKey> ks;
  ks.reserve(p);
  for (std::size_t j = 0; j < p; ++j) ks.push_back(PermutationKey::random(n, derive_seed(seed, j)));
  return KeyGroup(std::move(ks));
}

KeyGroup compose(const KeyGroup& outer, const KeyGroup& inner) {
  if (outer.p() != inner.p() || outer.n() != inner.n())
    throw DimensionError("compose: key group shapes differ");
  std::vector<PermutationKey> ks;
  ks.reserve(outer.p());
  for (std::size_t j = 0; j < outer.p(); ++j) ks.push_back(compose(outer.keys[j], inner.keys[j]));
  return KeyGroup(std::move(ks));
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace permcipher
