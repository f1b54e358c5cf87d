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

#include <vector>

#include "permcipher/perm.hpp"

namespace permcipher {

enum class DistanceKind { kAbsolute, kRelative };

/// A strictly positive distance distribution (epsilon-floored).
struct DistanceDistribution {
  std::vector<double> values;
  DistanceKind kind = DistanceKind::kAbsolute;
};

enum class CurveKind { kRisk, kInformationLoss };

/// Power-mean evaluations over a strictly increasing alpha grid.
/// Values are nondecreasing in alpha (power-mean inequality).
struct AversionCurve {
  std::vector<double> alphas;
  std::vector<double> values;
  CurveKind kind = CurveKind::kRisk;
};

/// Evaluation cutoffs for extreme exponents.
struct PowerMeanOptions {
  double log_space_threshold = 20.0;  // |alpha| above this: evaluate in log space
  double zero_threshold = 1e-9;       // |alpha| below this: geometric mean
  double minmax_cutoff = 100.0;       // |alpha| above this: min / max
};

/// J(p, alpha) = ((1/n) sum p_i^alpha)^(1/alpha), geometric mean at
/// alpha = 0, min/max beyond the cutoff. All entries must be > 0.
double power_mean(const std::vector<double>& p, double alpha, const PowerMeanOptions& opts = {});

/// Per-position dissimilarity between two keys, from their SIGNED
/// displacement vectors: max(|sa[i] - sb[i]|, epsilon). Identically
/// epsilon iff the keys are equal (block permutation).
DistanceDistribution relative_displacement(const PermutationKey& a, const PermutationKey& b,
                                           double epsilon = kDefaultEpsilon);

/// alphas must be strictly increasing. min > max step checks are the
/// caller's job; see make_alpha_grid.
std::vector<double> make_alpha_grid(double alpha_min, double alpha_max, double step);

/// Power means of the key's absolute displacement vector over a risk
/// grid (alphas <= 1). When `normalize` is set, values are divided by
/// the maximum feasible per-record displacement n-1.
AversionCurve risk_profile(const PermutationKey& key, const std::vector<double>& alphas,
                           double epsilon = kDefaultEpsilon, bool normalize = false);

/// Power means of the relative displacement between two keys over an
/// information-loss grid (alphas >= 1).
AversionCurve info_loss_profile(const PermutationKey& a, const PermutationKey& b,
                                const std::vector<double>& alphas,
                                double epsilon = kDefaultEpsilon, bool normalize = false);

}  // namespace permcipher
