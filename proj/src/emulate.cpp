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

#include "permcipher/emulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "permcipher/rank_map.hpp"

namespace permcipher {

std::vector<double> rank_swap(const std::vector<double>& values, double swap_pct, std::uint64_t seed) {
  if (values.size() < 2) throw InvalidSizeError("rank swap needs n >= 2 values");
  if (!(swap_pct > 0.0 && swap_pct <= 1.0)) throw ParameterError("swap_pct must lie in (0, 1]");
  const std::size_t n = values.size();
  const std::size_t w = static_cast<std::size_t>(std::lround(swap_pct * static_cast<double>(n)));
  if (w < 1) throw ParameterError("rank-swap window rounds to zero");

  const PermutationKey order = sort_key(values);
  std::vector<double> sorted = order.apply(values);

  std::mt19937_64 rng(seed);
  std::vector<char> swapped(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (swapped[i]) continue;
    std::vector<std::size_t> candidates;
    const std::size_t hi = std::min(i + w, n - 1);
    for (std::size_t j = i + 1; j <= hi; ++j)
      if (!swapped[j]) candidates.push_back(j);
    if (candidates.empty()) continue;  // tail position stays fixed
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const std::size_t j = candidates[pick(rng)];
    std::swap(sorted[i], sorted[j]);
    swapped[i] = swapped[j] = 1;
  }
  return order.inverse().apply(sorted);
}

std::vector<double> additive_noise(const std::vector<double>& values, double noise_ratio,
                                   std::uint64_t seed) {
  if (values.size() < 2) throw InvalidSizeError("additive noise needs n >= 2 values");
  if (!(noise_ratio > 0.0)) throw ParameterError("noise_ratio must be > 0");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) throw DegenerateInputError("zero-variance attribute: noise scale undefined");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, noise_ratio * sd);
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(v + gauss(rng));
  return out;
}

std::vector<double> multiplicative_noise(const std::vector<double>& values, double lo, double hi,
                                         std::uint64_t seed) {
  if (values.size() < 2) throw InvalidSizeError("multiplicative noise needs n >= 2 values");
  if (!(lo > 0.0) || lo > hi) throw ParameterError("multiplier range requires 0 < lo <= hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> factor(lo, hi);
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) out.push_back(lo == hi ? v * lo : v * factor(rng));
  return out;
}

Dataset mask_dataset(const Dataset& x, const MethodConfig& cfg) {
  x.validate();
  Dataset out;
  out.record_ids = x.record_ids;
  out.column_names = x.column_names;
  out.columns.reserve(x.p());
  for (std::size_t j = 0; j < x.p(); ++j) {
    const std::uint64_t seed = derive_seed(cfg.seed, j);
    switch (cfg.method) {
      case MaskingMethod::kRankSwap:
        out.columns.push_back(rank_swap(x.columns[j], cfg.swap_pct, seed));
        break;
      case MaskingMethod::kAdditiveNoise:
        out.columns.push_back(additive_noise(x.columns[j], cfg.noise_ratio, seed));
        break;
      case MaskingMethod::kMultiplicativeNoise:
        out.columns.push_back(multiplicative_noise(x.columns[j], cfg.mult_lo, cfg.mult_hi, seed));
        break;
    }
  }
  return out;
}

MethodProfile profile_method(const Dataset& x, const MethodConfig& cfg,
                             const std::vector<double>& alphas_risk,
                             const std::vector<double>& alphas_loss, double epsilon, bool normalize) {
  MethodProfile profile;
  profile.masked = mask_dataset(x, cfg);
  const KeyGroup keys = extract_key_group(x, profile.masked);
  for (std::size_t j = 0; j < keys.p(); ++j)
    profile.risk.push_back(risk_profile(keys.keys[j], alphas_risk, epsilon, normalize));
  for (std::size_t a = 0; a < keys.p(); ++a)
    for (std::size_t b = a + 1; b < keys.p(); ++b) {
      profile.pairs.emplace_back(a, b);
      profile.loss.push_back(info_loss_profile(keys.keys[a], keys.keys[b], alphas_loss, epsilon, normalize));
    }
  return profile;
}

}  // namespace permcipher
