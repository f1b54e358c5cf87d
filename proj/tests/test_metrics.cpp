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

#include "permcipher/metrics.hpp"

using namespace permcipher;

namespace {

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t n_min = 2,
                                        std::size_t n_max = 60) {
  std::uniform_int_distribution<std::size_t> size(n_min, n_max);
  std::uniform_real_distribution<double> value(0.1, 10.0);
  std::vector<double> p(size(rng));
  for (double& v : p) v = value(rng);
  return p;
}

double random_alpha(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> a(-5.0, 5.0);
  return a(rng);
}

PermutationKey five_record_key() { return PermutationKey::from_one_line({5, 2, 3, 1, 4}); }

constexpr double kEps = 1e-6;

}  // namespace

TEST_CASE("closed-form power means") {
  CHECK(power_mean({1, 4}, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(power_mean({1, 2, 3}, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(power_mean({1, 9}, -1.0) == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(power_mean({3, 3, 3}, -2.7) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(power_mean({1.0, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(power_mean({}, 1.0), InvalidSizeError);
}

TEST_CASE("extreme exponents return min and max") {
  const std::vector<double> p{0.5, 2.0, 7.5};
  CHECK(power_mean(p, -1000.0) == 0.5);
  CHECK(power_mean(p, 1000.0) == 7.5);
}

TEST_CASE("log-space evaluation agrees with the direct formula") {
  // straddle the threshold: alpha 19.9 evaluates directly, 20.1 in log space
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_distribution(rng);
    for (double alpha : {-20.1, -19.9, 19.9, 20.1}) {
      double direct = 0.0;
      for (double v : p) direct += std::pow(v, alpha);
      direct = std::pow(direct / static_cast<double>(p.size()), 1.0 / alpha);
      CHECK(power_mean(p, alpha) == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("NE: invariance under permutation of the distribution") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    auto p = random_distribution(rng);
    const double alpha = random_alpha(rng);
    const double before = power_mean(p, alpha);
    std::shuffle(p.begin(), p.end(), rng);
    CHECK(power_mean(p, alpha) == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("SI: invariance under m-fold duplication") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_distribution(rng);
    const double alpha = random_alpha(rng);
    std::uniform_int_distribution<int> dup(2, 5);
    const int m = dup(rng);
    std::vector<double> q;
    for (int i = 0; i < m; ++i) q.insert(q.end(), p.begin(), p.end());
    CHECK(power_mean(q, alpha) == doctest::Approx(power_mean(p, alpha)).epsilon(1e-9));
  }
}

TEST_CASE("NO: constant distributions evaluate to the constant") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    std::uniform_real_distribution<double> value(0.1, 10.0);
    std::uniform_int_distribution<std::size_t> size(2, 40);
    const double a = value(rng);
    const std::vector<double> p(size(rng), a);
    CHECK(power_mean(p, random_alpha(rng)) == doctest::Approx(a).epsilon(1e-9));
  }
}

TEST_CASE("FD: first-degree homogeneity") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_distribution(rng);
    const double alpha = random_alpha(rng);
    const double base = power_mean(p, alpha);
    for (double lambda : {0.5, 2.0, 10.0}) {
      std::vector<double> q = p;
      for (double& v : q) v *= lambda;
      CHECK(power_mean(q, alpha) == doctest::Approx(lambda * base).epsilon(1e-9));
    }
  }
}

TEST_CASE("SC: sub-domain coherency") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_distribution(rng);
    const auto q = random_distribution(rng);
    const double alpha = random_alpha(rng);
    // p' strictly dominates p, q' is untouched
    std::vector<double> p_up = p;
    for (double& v : p_up) v *= 1.5;
    REQUIRE(power_mean(p_up, alpha) > power_mean(p, alpha));
    std::vector<double> concat_up = p_up, concat = p;
    concat_up.insert(concat_up.end(), q.begin(), q.end());
    concat.insert(concat.end(), q.begin(), q.end());
    CHECK(power_mean(concat_up, alpha) > power_mean(concat, alpha));
  }
}

TEST_CASE("CO: small perturbations move the mean by a bounded amount") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_distribution(rng);
    const double alpha = random_alpha(rng);
    std::vector<double> q = p;
    std::uniform_real_distribution<double> delta(-1e-8, 1e-8);
    for (double& v : q) v += delta(rng);
    const double before = power_mean(p, alpha);
    const double after = power_mean(q, alpha);
    // gradient is bounded by J / min(p); entries are >= 0.1 - 1e-8
    CHECK(std::abs(after - before) <= 1e-6 * before);
  }
}

TEST_CASE("alpha monotonicity, strict off the constant case") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_distribution(rng);
    const double hi = random_alpha(rng);
    std::uniform_real_distribution<double> gap(0.5, 3.0);
    const double lo = hi - gap(rng);
    const double j_lo = power_mean(p, lo);
    const double j_hi = power_mean(p, hi);
    CHECK(j_lo <= j_hi * (1.0 + 1e-9));
    const bool constant =
        *std::max_element(p.begin(), p.end()) == *std::min_element(p.begin(), p.end());
    if (!constant)
      CHECK(j_lo < j_hi);
    else
      CHECK(j_lo == doctest::Approx(j_hi).epsilon(1e-9));
  }
}

TEST_CASE("cutoff limits hit min and max exactly") {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto p = random_distribution(rng);
    CHECK(power_mean(p, -101.0) == *std::min_element(p.begin(), p.end()));
    CHECK(power_mean(p, 101.0) == *std::max_element(p.begin(), p.end()));
  }
}

TEST_CASE("relative displacement") {
  const auto id = PermutationKey::identity(5);
  const auto key = five_record_key();

  SUBCASE("identical keys read as a block permutation") {
    const auto d = relative_displacement(key, key, kEps);
    for (double v : d.values) CHECK(v == kEps);
  }
  SUBCASE("identity versus the five-record key") {
    const auto d = relative_displacement(id, key, kEps);
    CHECK(d.values == std::vector<double>{4, kEps, kEps, 3, 1});
  }
  SUBCASE("symmetry") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = PermutationKey::random(9, derive_seed(seed, 0));
      const auto b = PermutationKey::random(9, derive_seed(seed, 1));
      CHECK(relative_displacement(a, b, kEps).values == relative_displacement(b, a, kEps).values);
    }
  }
  SUBCASE("epsilon-only iff keys are equal") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = PermutationKey::random(9, derive_seed(seed, 2));
      const auto b = PermutationKey::random(9, derive_seed(seed, 3));
      const auto d = relative_displacement(a, b, kEps);
      const bool all_eps = std::all_of(d.values.begin(), d.values.end(),
                                       [](double v) { return v == kEps; });
      CHECK(all_eps == (a == b));
    }
  }
  CHECK_THROWS_AS(relative_displacement(id, PermutationKey::identity(4), kEps), DimensionError);
}

TEST_CASE("risk profile") {
  const auto grid = make_alpha_grid(-2.0, 1.0, 0.5);
  SUBCASE("identity key stays at epsilon") {
    const auto c = risk_profile(PermutationKey::identity(6), grid, kEps);
    for (double v : c.values) CHECK(v == doctest::Approx(kEps).epsilon(1e-9));
  }
  SUBCASE("mean absolute displacement at alpha = 1") {
    const auto c = risk_profile(five_record_key(), {1.0}, kEps);
    CHECK(c.values[0] == doctest::Approx((4 + 3 + 1 + 2 * kEps) / 5.0).epsilon(1e-12));
  }
  SUBCASE("nondecreasing in alpha") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto c = risk_profile(PermutationKey::random(15, seed), grid, kEps);
      for (std::size_t i = 1; i < c.values.size(); ++i)
        CHECK(c.values[i] >= c.values[i - 1] * (1.0 - 1e-12));
    }
  }
  SUBCASE("normalization divides by n-1") {
    const auto raw = risk_profile(five_record_key(), {1.0}, kEps, false);
    const auto norm = risk_profile(five_record_key(), {1.0}, kEps, true);
    CHECK(norm.values[0] == doctest::Approx(raw.values[0] / 4.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(risk_profile(five_record_key(), {0.0, 1.5}, kEps), RangeError);
}

TEST_CASE("information loss profile") {
  const auto id = PermutationKey::identity(5);
  const auto key = five_record_key();
  SUBCASE("equal keys stay at epsilon") {
    const auto c = info_loss_profile(key, key, {1.0, 2.0, 3.0}, kEps);
    for (double v : c.values) CHECK(v == doctest::Approx(kEps).epsilon(1e-9));
  }
  SUBCASE("mean relative distance at alpha = 1") {
    const auto c = info_loss_profile(id, key, {1.0}, kEps);
    CHECK(c.values[0] == doctest::Approx((4 + 3 + 1 + 2 * kEps) / 5.0).epsilon(1e-12));
  }
  SUBCASE("large alpha approaches the maximum") {
    const auto c = info_loss_profile(id, key, {1.0, 50.0, 101.0}, kEps);
    CHECK(c.values[1] == doctest::Approx(4.0).epsilon(0.05));
    CHECK(c.values[2] == 4.0);  // beyond the cutoff: exactly the max
  }
  CHECK_THROWS_AS(info_loss_profile(id, key, {0.5, 1.0}, kEps), RangeError);
}

TEST_CASE("alpha grids") {
  const auto g = make_alpha_grid(-1.0, 1.0, 0.5);
  CHECK(g == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK(make_alpha_grid(1.0, 1.0, 0.01) == std::vector<double>{1.0});
  CHECK_THROWS_AS(make_alpha_grid(1.0, 0.0, 0.5), ParameterError);
  CHECK_THROWS_AS(make_alpha_grid(0.0, 1.0, 0.0), ParameterError);
  // the default increments produce the documented grid sizes
  CHECK(make_alpha_grid(-5.0, 1.0, 0.01).size() == 601);
  CHECK(make_alpha_grid(1.0, 5.0, 0.01).size() == 401);
}
