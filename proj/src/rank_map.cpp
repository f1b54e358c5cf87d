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

#include "permcipher/rank_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace permcipher {

namespace {

void check_finite(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]))
      throw InvalidDataError("non-finite value at record " + std::to_string(i + 1));
}

void check_aligned(const Dataset& x, const Dataset& y) {
  x.validate();
  y.validate();
  if (x.n() != y.n() || x.p() != y.p())
    throw DimensionError("datasets have different shapes (" + std::to_string(x.n()) + "x" +
                         std::to_string(x.p()) + " vs " + std::to_string(y.n()) + "x" +
                         std::to_string(y.p()) + ")");
}

}  // namespace

void Dataset::validate() const {
  if (columns.empty()) throw InvalidSizeError("dataset needs p >= 1 attributes");
  if (record_ids.size() < 2)
    throw InvalidSizeError("dataset needs n >= 2 records, got " + std::to_string(record_ids.size()));
  for (const auto& col : columns) {
    if (col.size() != record_ids.size()) throw DimensionError("column length does not match record count");
    check_finite(col);
  }
  if (column_names.size() != columns.size()) throw DimensionError("column name count mismatch");
  std::set<std::string> ids(record_ids.begin(), record_ids.end());
  if (ids.size() != record_ids.size()) throw ValidationError("record ids are not unique");
}

Dataset Dataset::from_columns(std::vector<std::vector<double>> cols) {
  Dataset d;
  d.columns = std::move(cols);
  const std::size_t n = d.columns.empty() ? 0 : d.columns.front().size();
  for (std::size_t i = 0; i < n; ++i) d.record_ids.push_back(std::to_string(i + 1));
  for (std::size_t j = 0; j < d.columns.size(); ++j) d.column_names.push_back("a" + std::to_string(j + 1));
  d.validate();
  return d;
}

std::vector<std::size_t> ranks(const std::vector<double>& values, RankDirection direction) {
  if (values.size() < 2) throw InvalidSizeError("ranks need n >= 2 values");
  check_finite(values);
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (direction == RankDirection::kAscending) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  } else {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  }
  std::vector<std::size_t> out(values.size());
  for (std::size_t r = 0; r < order.size(); ++r) out[order[r]] = r + 1;
  return out;
}

PermutationKey sort_key(const std::vector<double>& values) {
  if (values.size() < 2) throw InvalidSizeError("sort key needs n >= 2 values");
  check_finite(values);
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  return PermutationKey(std::move(order));
}

Dataset reverse_map(const Dataset& x, const Dataset& y) {
  check_aligned(x, y);
  Dataset z;
  z.record_ids = x.record_ids;
  z.column_names = x.column_names;
  z.columns.reserve(x.p());
  for (std::size_t j = 0; j < x.p(); ++j) {
    std::vector<double> sorted_x = x.columns[j];
    std::sort(sorted_x.begin(), sorted_x.end());
    const auto y_ranks = ranks(y.columns[j], RankDirection::kAscending);
    std::vector<double> col(x.n());
    for (std::size_t i = 0; i < x.n(); ++i) col[i] = sorted_x[y_ranks[i] - 1];
    z.columns.push_back(std::move(col));
  }
  return z;
}

KeyGroup extract_key_group(const Dataset& x, const Dataset& y) {
  check_aligned(x, y);
  std::vector<PermutationKey> keys;
  keys.reserve(x.p());
  for (std::size_t j = 0; j < x.p(); ++j) {
    const PermutationKey a = sort_key(x.columns[j]);
    const auto y_ranks = ranks(y.columns[j], RankDirection::kAscending);
    // Overall record-space permutation carrying X_j into Z_j.
    std::vector<std::size_t> overall(x.n());
    for (std::size_t i = 0; i < x.n(); ++i) overall[i] = a.source_of(y_ranks[i] - 1);
    const PermutationKey p(std::move(overall));
    // Conjugate back into sorted rank space: D = A P A^-1.
    keys.push_back(compose(a, compose(p, a.inverse())));
  }
  return KeyGroup(std::move(keys));
}

std::vector<std::vector<double>> residual_noise(const Dataset& x, const Dataset& y) {
  const Dataset z = reverse_map(x, y);
  std::vector<std::vector<double>> e(x.p(), std::vector<double>(x.n()));
  for (std::size_t j = 0; j < x.p(); ++j)
    for (std::size_t i = 0; i < x.n(); ++i) e[j][i] = y.columns[j][i] - z.columns[j][i];
  return e;
}

Dataset encrypt(const Dataset& x, const KeyGroup& keys) {
  x.validate();
  if (keys.p() != x.p() || keys.n() != x.n())
    throw DimensionError("key group shape " + std::to_string(keys.n()) + "x" + std::to_string(keys.p()) +
                         " does not match dataset " + std::to_string(x.n()) + "x" + std::to_string(x.p()));
  Dataset out;
  out.record_ids = x.record_ids;
  out.column_names = x.column_names;
  out.columns.reserve(x.p());
  for (std::size_t j = 0; j < x.p(); ++j) {
    const PermutationKey a = sort_key(x.columns[j]);
    out.columns.push_back(a.inverse().apply(keys.keys[j].apply(a.apply(x.columns[j]))));
  }
  return out;
}

std::vector<double> rank_preserving_noise(const std::vector<double>& values, std::uint64_t seed,
                                          double scale) {
  if (values.size() < 2) throw InvalidSizeError("rank-preserving noise needs n >= 2 values");
  check_finite(values);
  if (!(scale > 0.0 && scale < 1.0)) throw ParameterError("noise scale must lie in (0, 1)");
  const std::size_t n = values.size();

  // Half-gap to the nearest distinct neighbor in sorted order; tied
  // records get a zero bound.
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct;
  for (double v : sorted)
    if (distinct.empty() || v != distinct.back()) distinct.push_back(v);

  std::vector<double> bound(n, 0.0);
  if (distinct.size() > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto it = std::lower_bound(distinct.begin(), distinct.end(), values[i]);
      const std::size_t d = static_cast<std::size_t>(it - distinct.begin());
      const bool tied =
          std::count(values.begin(), values.end(), values[i]) > 1;
      if (tied) continue;
      double gap = std::numeric_limits<double>::infinity();
      if (d > 0) gap = std::min(gap, distinct[d] - distinct[d - 1]);
      if (d + 1 < distinct.size()) gap = std::min(gap, distinct[d + 1] - distinct[d]);
      bound[i] = scale * 0.5 * gap;
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<double> noise(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (bound[i] <= 0.0) continue;
    std::uniform_real_distribution<double> u(-bound[i], bound[i]);
    noise[i] = u(rng);
  }
  return noise;
}

}  // namespace permcipher
