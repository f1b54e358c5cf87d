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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permcipher/metrics.hpp"
#include "permcipher/perm.hpp"

namespace permcipher {

enum class Comparator { kAtLeast, kAtMost, kApprox };

/// One power-mean requirement: the measured value at `alpha` must
/// compare against `target` (within the menu tolerance for kApprox).
struct MenuConstraint {
  double alpha = 1.0;
  Comparator cmp = Comparator::kApprox;
  double target = 0.0;
  double weight = 1.0;
};

struct AttributeMenu {
  std::string name;
  std::optional<long long> min_displacement;  // floor: every record moved >= f ranks
  std::vector<MenuConstraint> constraints;    // alphas <= 1, on absolute displacements
};

struct PairMenu {
  std::string first;
  std::string second;
  std::vector<MenuConstraint> constraints;  // alphas >= 1, on relative displacements
};

/// Declarative power-mean targets from which keys are synthesized.
struct MenuSpec {
  std::size_t n = 0;
  std::vector<AttributeMenu> attributes;
  std::vector<PairMenu> pairs;
  double tolerance = 0.05;  // relative tolerance for the kApprox comparator
  bool normalized = false;  // targets expressed as fractions of n-1

  std::size_t attribute_index(const std::string& name) const;
};

enum class Severity { kWarning, kContradiction };

struct MenuDiagnostic {
  Severity severity = Severity::kWarning;
  std::string message;
};

/// Flags contradictions (infeasible targets, empty comparator intervals,
/// floors above mean targets) and coherency warnings (dissimilar risk
/// profiles combined with near-zero pair targets).
std::vector<MenuDiagnostic> validate_menu(const MenuSpec& menu);

struct ConstraintResult {
  std::string label;
  double alpha = 1.0;
  Comparator cmp = Comparator::kApprox;
  double target = 0.0;
  double achieved = 0.0;
  double weight = 1.0;
  bool satisfied = false;
};

struct CalibrationReport {
  std::vector<ConstraintResult> constraints;
  double residual = 0.0;  // sum of weight * max(0, relative violation)^2
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  bool all_satisfied = false;
};

/// Measures every menu constraint against the group and reports the
/// weighted squared violations. Zero residual iff all satisfied.
CalibrationReport score_keys(const KeyGroup& keys, const MenuSpec& menu,
                             double epsilon = kDefaultEpsilon);

struct SynthesisOptions {
  std::size_t restarts = 8;
  double epsilon = kDefaultEpsilon;
};

/// Raised when the menu itself is contradictory or the search budget
/// runs out with constraints still unmet; carries the best attempt.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, KeyGroup best, CalibrationReport report)
      : Error(what), best_keys(std::move(best)), report(std::move(report)) {}
  explicit InfeasibleError(const std::string& what) : Error(what) {}

  std::optional<KeyGroup> best_keys;
  CalibrationReport report;
};

/// Seeded stochastic search (simulated annealing with restarts) for a
/// key group whose measured profiles satisfy the menu. Deterministic
/// for a given (menu, seed, budget).
std::pair<KeyGroup, CalibrationReport> synthesize_keys(const MenuSpec& menu, std::uint64_t seed,
                                                       std::uint64_t budget,
                                                       const SynthesisOptions& opts = {});

}  // namespace permcipher
