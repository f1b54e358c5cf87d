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
#include <string>
#include <vector>

#include "permcipher/dataset.hpp"
#include "permcipher/metrics.hpp"

namespace permcipher {

enum class MaskingMethod { kRankSwap, kAdditiveNoise, kMultiplicativeNoise };

struct MethodConfig {
  MaskingMethod method = MaskingMethod::kRankSwap;
  double swap_pct = 0.3;       // rank-swap window as a fraction of n
  double noise_ratio = 0.5;    // additive noise sd as a fraction of the attribute sd
  double mult_lo = 0.75;       // multiplicative noise range
  double mult_hi = 1.25;
  std::uint64_t seed = 0;
};

/// Classical rank swapping: in ascending sorted order, each not-yet-swapped
/// position pairs with a uniformly chosen not-yet-swapped position at most
/// `w = round(swap_pct * n)` places to its right. Preserves the marginal
/// exactly; no record's rank moves more than w.
std::vector<double> rank_swap(const std::vector<double>& values, double swap_pct, std::uint64_t seed);

/// Centered Gaussian noise with sd = noise_ratio * sample sd of `values`.
std::vector<double> additive_noise(const std::vector<double>& values, double noise_ratio,
                                   std::uint64_t seed);

/// Each value multiplied by an independent uniform draw on [lo, hi].
std::vector<double> multiplicative_noise(const std::vector<double>& values, double lo, double hi,
                                         std::uint64_t seed);

/// Applies the configured method to every attribute (per-attribute seeds
/// derived from cfg.seed). Record ids and shape are preserved.
Dataset mask_dataset(const Dataset& x, const MethodConfig& cfg);

struct MethodProfile {
  Dataset masked;
  std::vector<AversionCurve> risk;                         // one per attribute
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // attribute index pairs
  std::vector<AversionCurve> loss;                         // one per pair, aligned with `pairs`
};

/// mask -> reverse_map -> extract_key_group -> risk per attribute and
/// information loss per attribute pair.
MethodProfile profile_method(const Dataset& x, const MethodConfig& cfg,
                             const std::vector<double>& alphas_risk,
                             const std::vector<double>& alphas_loss,
                             double epsilon = kDefaultEpsilon, bool normalize = false);

}  // namespace permcipher
