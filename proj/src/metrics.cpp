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

#include "permcipher/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace permcipher {

double power_mean(const std::vector<double>& p, double alpha, const PowerMeanOptions& opts) {
  if (p.empty()) throw InvalidSizeError("power mean of an empty distribution");
  for (double v : p)
    if (!(v > 0.0)) throw DomainError("power mean requires strictly positive entries");
  const double n = static_cast<double>(p.size());

  if (std::abs(alpha) > opts.minmax_cutoff) {
    return alpha < 0.0 ? *std::min_element(p.begin(), p.end())
                       : *std::max_element(p.begin(), p.end());
  }
  if (std::abs(alpha) < opts.zero_threshold) {
    double log_sum = 0.0;
    for (double v : p) log_sum += std::log(v);
    return std::exp(log_sum / n);
  }
  if (std::abs(alpha) > opts.log_space_threshold) {
    // log-sum-exp over alpha * log p_i, shifted by the max term
    double m = -std::numeric_limits<double>::infinity();
    std::vector<double> scaled(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      scaled[i] = alpha * std::log(p[i]);
      m = std::max(m, scaled[i]);
    }
    double acc = 0.0;
    for (double s : scaled) acc += std::exp(s - m);
    return std::exp((m + std::log(acc) - std::log(n)) / alpha);
  }
  double acc = 0.0;
  for (double v : p) acc += std::pow(v, alpha);
  return std::pow(acc / n, 1.0 / alpha);
}

DistanceDistribution relative_displacement(const PermutationKey& a, const PermutationKey& b,
                                           double epsilon) {
  if (a.size() != b.size())
    throw DimensionError("relative displacement: key sizes differ (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be > 0");
  const auto sa = a.signed_displacement();
  const auto sb = b.signed_displacement();
  DistanceDistribution d;
  d.kind = DistanceKind::kRelative;
  d.values.reserve(sa.size());
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double delta = std::llabs(sa[i] - sb[i]);
    d.values.push_back(delta > 0.0 ? delta : epsilon);
  }
  return d;
}

std::vector<double> make_alpha_grid(double alpha_min, double alpha_max, double step) {
  if (!(step > 0.0)) throw ParameterError("alpha step must be > 0");
  if (alpha_min > alpha_max) throw ParameterError("alpha range is empty");
  std::vector<double> grid;
  const std::size_t count = static_cast<std::size_t>(std::floor((alpha_max - alpha_min) / step + 0.5)) + 1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = alpha_min + static_cast<double>(i) * step;
    grid.push_back(std::min(a, alpha_max));
  }
  return grid;
}

namespace {

void check_increasing(const std::vector<double>& alphas) {
  for (std::size_t i = 1; i < alphas.size(); ++i)
    if (!(alphas[i] > alphas[i - 1])) throw ParameterError("alpha grid must be strictly increasing");
}

AversionCurve evaluate_curve(const std::vector<double>& distances, const std::vector<double>& alphas,
                             CurveKind kind, double scale) {
  AversionCurve curve;
  curve.kind = kind;
  curve.alphas = alphas;
  curve.values.reserve(alphas.size());
  for (double a : alphas) curve.values.push_back(power_mean(distances, a) / scale);
  return curve;
}

}  // namespace

AversionCurve risk_profile(const PermutationKey& key, const std::vector<double>& alphas,
                           double epsilon, bool normalize) {
  if (alphas.empty()) throw ParameterError("empty alpha grid");
  check_increasing(alphas);
  for (double a : alphas)
    if (a > 1.0) throw RangeError("risk profile requires alpha <= 1, got " + std::to_string(a));
  const double scale = normalize ? static_cast<double>(key.size() - 1) : 1.0;
  return evaluate_curve(key.displacement(epsilon).absolute, alphas, CurveKind::kRisk, scale);
}

AversionCurve info_loss_profile(const PermutationKey& a, const PermutationKey& b,
                                const std::vector<double>& alphas, double epsilon, bool normalize) {
  if (alphas.empty()) throw ParameterError("empty alpha grid");
  check_increasing(alphas);
  for (double al : alphas)
    if (al < 1.0)
      throw RangeError("information-loss profile requires alpha >= 1, got " + std::to_string(al));
  const double scale = normalize ? static_cast<double>(a.size() - 1) : 1.0;
  return evaluate_curve(relative_displacement(a, b, epsilon).values, alphas,
                        CurveKind::kInformationLoss, scale);
}

}  // namespace permcipher
