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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "permcipher/emulate.hpp"
#include "permcipher/rank_map.hpp"

using namespace permcipher;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<long long> swap_displacements(const std::vector<double>& x,
                                          const std::vector<double>& y) {
  const Dataset dx = Dataset::from_columns({x});
  const Dataset dy = Dataset::from_columns({y});
  return extract_key_group(dx, dy).keys[0].signed_displacement();
}

}  // namespace

TEST_CASE("rank swap with a window of one swaps disjoint adjacent pairs") {
  const std::vector<double> v{10, 20, 30, 40, 50, 60};
  const auto y = rank_swap(v, 1.0 / 6.0, 3);  // w = 1
  const auto d = swap_displacements(v, y);
  for (long long s : d) CHECK(std::llabs(s) <= 1);
  // swaps pair off: displacement +1 must be followed by -1 somewhere
  long long sum = 0;
  for (long long s : d) sum += s;
  CHECK(sum == 0);
}

TEST_CASE("rank swap preserves the marginal exactly") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto v = random_values(100, seed);
    const auto y = rank_swap(v, 0.3, seed);
    CHECK(std::multiset<double>(v.begin(), v.end()) == std::multiset<double>(y.begin(), y.end()));
  }
}

TEST_CASE("rank swap never moves a rank beyond the window") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 100;
    const double pct = 0.1;
    const long long w = std::llround(pct * static_cast<double>(n));
    const auto v = random_values(n, derive_seed(seed, 0));
    const auto d = swap_displacements(v, rank_swap(v, pct, seed));
    for (long long s : d) CHECK(std::llabs(s) <= w);
  }
}

TEST_CASE("rank swap is deterministic and value independent") {
  const auto v = random_values(50, 4);
  CHECK(rank_swap(v, 0.2, 11) == rank_swap(v, 0.2, 11));

  // monotone transforms leave the induced permutation unchanged
  std::vector<double> w = v;
  for (double& x : w) x = 3.0 * x + 7.0;
  CHECK(swap_displacements(v, rank_swap(v, 0.2, 11)) ==
        swap_displacements(w, rank_swap(w, 0.2, 11)));
}

TEST_CASE("rank swap mean displacement tracks half the window") {
  // n = 1080 with a 30 percent window: mean absolute displacement near w/2
  const std::size_t n = 1080;
  double total = 0.0;
  const int trials = 50;
  for (int t = 0; t < trials; ++t) {
    const auto v = random_values(n, derive_seed(123, static_cast<std::uint64_t>(t)));
    const auto d = swap_displacements(v, rank_swap(v, 0.3, static_cast<std::uint64_t>(t)));
    double s = 0.0;
    for (long long x : d) s += static_cast<double>(std::llabs(x));
    total += s / static_cast<double>(n);
  }
  const double mean = total / trials;
  CHECK(mean > 160.0 * 0.85);
  CHECK(mean < 160.0 * 1.15);
}

TEST_CASE("rank swap parameter validation") {
  const auto v = random_values(20, 0);
  CHECK_THROWS_AS(rank_swap(v, -0.1, 0), ParameterError);
  CHECK_THROWS_AS(rank_swap(v, 0.0, 0), ParameterError);
  CHECK_THROWS_AS(rank_swap(v, 1.1, 0), ParameterError);
  // a window that rounds to zero is rejected rather than silently a no-op
  CHECK_THROWS_AS(rank_swap(v, 0.01, 0), ParameterError);
}

TEST_CASE("additive noise") {
  const auto v = random_values(2000, 9);
  const auto y = additive_noise(v, 0.5, 42);
  REQUIRE(y.size() == v.size());
  CHECK(additive_noise(v, 0.5, 42) == y);

  // sample sd of the injected noise should be near 0.5 * sd(v)
  double mean_v = 0.0;
  for (double x : v) mean_v += x;
  mean_v /= static_cast<double>(v.size());
  double var_v = 0.0;
  for (double x : v) var_v += (x - mean_v) * (x - mean_v);
  var_v /= static_cast<double>(v.size() - 1);

  std::vector<double> noise(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) noise[i] = y[i] - v[i];
  double mean_e = 0.0;
  for (double e : noise) mean_e += e;
  mean_e /= static_cast<double>(noise.size());
  double var_e = 0.0;
  for (double e : noise) var_e += (e - mean_e) * (e - mean_e);
  var_e /= static_cast<double>(noise.size() - 1);

  CHECK(std::sqrt(var_e) == doctest::Approx(0.5 * std::sqrt(var_v)).epsilon(0.1));
  CHECK(std::abs(mean_e) < 0.1 * std::sqrt(var_v));

  CHECK_THROWS_AS(additive_noise(std::vector<double>(10, 5.0), 0.5, 0), DegenerateInputError);
  CHECK_THROWS_AS(additive_noise(v, -0.5, 0), ParameterError);
}

TEST_CASE("multiplicative noise") {
  const auto v = random_values(200, 10);
  const auto y = multiplicative_noise(v, 0.75, 1.25, 5);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = y[i] / v[i];
    CHECK(f >= 0.75);
    CHECK(f <= 1.25);
  }
  // degenerate range is exact scaling
  const auto doubled = multiplicative_noise(v, 2.0, 2.0, 5);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(doubled[i] == doctest::Approx(2.0 * v[i]));
  CHECK_THROWS_AS(multiplicative_noise(v, 1.25, 0.75, 0), ParameterError);
}

TEST_CASE("mask_dataset applies the method per attribute with derived seeds") {
  const Dataset x = Dataset::from_columns({random_values(60, 1), random_values(60, 2)});
  MethodConfig cfg;
  cfg.method = MaskingMethod::kRankSwap;
  cfg.swap_pct = 0.2;
  cfg.seed = 77;
  const Dataset y = mask_dataset(x, cfg);
  CHECK(y.record_ids == x.record_ids);
  CHECK(y.column_names == x.column_names);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK(y.columns[j] == rank_swap(x.columns[j], 0.2, derive_seed(77, j)));
  // different attributes see different seeds: columns with identical values
  // still mask differently
  const Dataset same = Dataset::from_columns({random_values(60, 3), random_values(60, 3)});
  const Dataset masked = mask_dataset(same, cfg);
  CHECK(masked.columns[0] != masked.columns[1]);
}

TEST_CASE("profile_method matches the manual pipeline") {
  const Dataset x = Dataset::from_columns({random_values(80, 20), random_values(80, 21)});
  MethodConfig cfg;
  cfg.method = MaskingMethod::kAdditiveNoise;
  cfg.noise_ratio = 0.4;
  cfg.seed = 3;
  const std::vector<double> risk_alphas{-1.0, 0.0, 1.0};
  const std::vector<double> loss_alphas{1.0, 2.0};
  const auto prof = profile_method(x, cfg, risk_alphas, loss_alphas);

  const Dataset y = mask_dataset(x, cfg);
  CHECK(prof.masked == y);
  const KeyGroup keys = extract_key_group(x, y);
  REQUIRE(prof.risk.size() == 2);
  for (std::size_t j = 0; j < 2; ++j)
    CHECK(prof.risk[j].values == risk_profile(keys.keys[j], risk_alphas).values);
  REQUIRE(prof.pairs.size() == 1);
  CHECK(prof.pairs[0] == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(prof.loss[0].values ==
        info_loss_profile(keys.keys[0], keys.keys[1], loss_alphas).values);
}

TEST_CASE("stronger noise does not reduce measured risk") {
  const Dataset x = Dataset::from_columns({random_values(300, 30)});
  MethodConfig weak, strong;
  weak.method = strong.method = MaskingMethod::kAdditiveNoise;
  weak.noise_ratio = 0.05;
  strong.noise_ratio = 2.0;
  weak.seed = strong.seed = 8;
  const auto pw = profile_method(x, weak, {1.0}, {1.0});
  const auto ps = profile_method(x, strong, {1.0}, {1.0});
  CHECK(ps.risk[0].values[0] > pw.risk[0].values[0]);
}
