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

#include "permcipher/attack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "permcipher/perm.hpp"
#include "permcipher/rank_map.hpp"

namespace permcipher {

ShuffledDataset shuffle_records(const Dataset& y, std::uint64_t seed) {
  y.validate();
  const PermutationKey b = PermutationKey::random(y.n(), seed);
  ShuffledDataset out;
  out.data.column_names = y.column_names;
  for (std::size_t r = 0; r < y.n(); ++r) {
    out.data.record_ids.push_back("r" + std::to_string(r + 1));
    out.truth.push_back(b.source_of(r));
  }
  for (const auto& col : y.columns) out.data.columns.push_back(b.apply(col));
  return out;
}

namespace {

std::vector<std::vector<double>> rank_cost_matrix(const Dataset& x, const Dataset& y) {
  const std::size_t n = x.n();
  std::vector<std::vector<long long>> xr(x.p()), yr(x.p());
  for (std::size_t j = 0; j < x.p(); ++j) {
    const auto rx = ranks(x.columns[j], RankDirection::kAscending);
    const auto ry = ranks(y.columns[j], RankDirection::kAscending);
    xr[j].assign(rx.begin(), rx.end());
    yr[j].assign(ry.begin(), ry.end());
  }
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      long long c = 0;
      for (std::size_t j = 0; j < x.p(); ++j) c += std::llabs(xr[j][i] - yr[j][r]);
      cost[r][i] = static_cast<double>(c);
    }
  return cost;
}

std::vector<std::vector<double>> distance_cost_matrix(const Dataset& x, const Dataset& y) {
  const std::size_t n = x.n();
  auto standardize = [](const std::vector<double>& col) {
    const double n = static_cast<double>(col.size());
    const double mean = std::accumulate(col.begin(), col.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : col) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    if (sd == 0.0) throw DegenerateInputError("zero-variance attribute cannot be standardized");
    std::vector<double> out;
    out.reserve(col.size());
    for (double v : col) out.push_back((v - mean) / sd);
    return out;
  };
  std::vector<std::vector<double>> xs(x.p()), ys(x.p());
  for (std::size_t j = 0; j < x.p(); ++j) {
    xs[j] = standardize(x.columns[j]);
    ys[j] = standardize(y.columns[j]);
  }
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0;
      for (std::size_t j = 0; j < x.p(); ++j) {
        const double d = xs[j][i] - ys[j][r];
        c += d * d;
      }
      cost[r][i] = std::sqrt(c);
    }
  return cost;
}

std::vector<std::size_t> greedy_assignment(const std::vector<std::vector<double>>& cost) {
  std::vector<std::size_t> out(cost.size());
  for (std::size_t r = 0; r < cost.size(); ++r) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < cost[r].size(); ++i)
      if (cost[r][i] < cost[r][best]) best = i;
    out[r] = best;
  }
  return out;
}

// Jonker-Volgenant style shortest augmenting path assignment, O(n^3).
std::vector<std::size_t> optimal_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, n);  // column -> row
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<double> min_to(n + 1, inf);
    std::vector<std::size_t> prev(n + 1, n);
    std::vector<char> in_tree(n + 1, 0);
    std::size_t j0 = n;  // virtual column holding the current row
    match[j0] = r;
    do {
      in_tree[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (in_tree[j]) continue;
        const double reduced = cost[i0][j] - u[i0] - v[j];
        if (reduced < min_to[j]) {
          min_to[j] = reduced;
          prev[j] = j0;
        }
        if (min_to[j] < delta) {
          delta = min_to[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (in_tree[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_to[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != n);
    while (j0 != n) {
      const std::size_t j1 = prev[j0];
      match[j0] = match[j1];
      j0 = j1;
    }
  }
  std::vector<std::size_t> out(n);
  for (std::size_t j = 0; j < n; ++j)
    if (match[j] != n) out[match[j]] = j;
  return out;
}

}  // namespace

LinkageResult link_records(const Dataset& x, const ShuffledDataset& y, LinkageMethod method,
                           LinkageStrategy strategy) {
  x.validate();
  y.data.validate();
  if (x.n() != y.data.n() || x.p() != y.data.p())
    throw DimensionError("linkage requires datasets of the same shape");

  const auto cost = method == LinkageMethod::kRank ? rank_cost_matrix(x, y.data)
                                                   : distance_cost_matrix(x, y.data);
  LinkageResult result;
  result.method = method;
  result.strategy = strategy;
  result.assignment = strategy == LinkageStrategy::kGreedy ? greedy_assignment(cost)
                                                           : optimal_assignment(cost);
  std::size_t correct = 0;
  for (std::size_t r = 0; r < result.assignment.size(); ++r)
    if (result.assignment[r] == y.truth[r]) ++correct;
  result.correct_rate = static_cast<double>(correct) / static_cast<double>(x.n());
  return result;
}

}  // namespace permcipher
