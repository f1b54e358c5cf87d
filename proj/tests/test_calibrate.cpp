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

#include "permcipher/calibrate.hpp"

using namespace permcipher;

namespace {

bool has_contradiction(const std::vector<MenuDiagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const MenuDiagnostic& d) {
    return d.severity == Severity::kContradiction;
  });
}

MenuSpec simple_menu(std::size_t n, double target, Comparator cmp = Comparator::kApprox) {
  MenuSpec m;
  m.n = n;
  m.attributes.push_back({"a1", std::nullopt, {{1.0, cmp, target, 1.0}}});
  return m;
}

}  // namespace

TEST_CASE("menu validation flags out-of-range alphas") {
  MenuSpec m = simple_menu(10, 2.0);
  m.attributes[0].constraints[0].alpha = 1.5;  // risk side must stay <= 1
  CHECK(has_contradiction(validate_menu(m)));

  MenuSpec p;
  p.n = 10;
  p.attributes.push_back({"a1", std::nullopt, {}});
  p.attributes.push_back({"a2", std::nullopt, {}});
  p.pairs.push_back({"a1", "a2", {{0.5, Comparator::kApprox, 1.0, 1.0}}});
  CHECK(has_contradiction(validate_menu(p)));
}

TEST_CASE("menu validation flags unreachable targets") {
  // no displacement can exceed n-1
  CHECK(has_contradiction(validate_menu(simple_menu(10, 9.5, Comparator::kAtLeast))));
  CHECK_FALSE(has_contradiction(validate_menu(simple_menu(10, 8.0, Comparator::kAtLeast))));
}

TEST_CASE("menu validation flags empty comparator intervals") {
  MenuSpec m = simple_menu(20, 10.0, Comparator::kAtLeast);
  // >= 10 at alpha 1 together with <= 2 at alpha 1 is unsatisfiable
  m.attributes[0].constraints.push_back({1.0, Comparator::kAtMost, 2.0, 1.0});
  CHECK(has_contradiction(validate_menu(m)));

  // monotonicity across alphas: J(-1) >= 10 forces J(1) >= 10
  MenuSpec m2 = simple_menu(20, 2.0, Comparator::kAtMost);
  m2.attributes[0].constraints.push_back({-1.0, Comparator::kAtLeast, 10.0, 1.0});
  CHECK(has_contradiction(validate_menu(m2)));
}

TEST_CASE("menu validation flags floors above mean targets") {
  MenuSpec m = simple_menu(20, 3.0, Comparator::kAtMost);
  m.attributes[0].min_displacement = 8;  // every record moved >= 8 but mean <= 3
  CHECK(has_contradiction(validate_menu(m)));
}

TEST_CASE("menu validation rejects unknown pair attributes and bad weights") {
  MenuSpec m;
  m.n = 10;
  m.attributes.push_back({"a1", std::nullopt, {}});
  m.pairs.push_back({"a1", "missing", {{2.0, Comparator::kApprox, 1.0, 1.0}}});
  CHECK(has_contradiction(validate_menu(m)));

  MenuSpec w = simple_menu(10, 2.0);
  w.attributes[0].constraints[0].weight = -1.0;
  CHECK(has_contradiction(validate_menu(w)));
}

TEST_CASE("coherency warning for near-zero pair target on dissimilar attributes") {
  MenuSpec m;
  m.n = 30;
  m.attributes.push_back({"a1", std::nullopt, {{1.0, Comparator::kAtLeast, 10.0, 1.0}}});
  m.attributes.push_back({"a2", std::nullopt, {{1.0, Comparator::kAtMost, 0.5, 1.0}}});
  m.pairs.push_back({"a1", "a2", {{1.0, Comparator::kAtMost, 0.01, 1.0}}});
  const auto diags = validate_menu(m);
  CHECK(std::any_of(diags.begin(), diags.end(), [](const MenuDiagnostic& d) {
    return d.severity == Severity::kWarning;
  }));
}

TEST_CASE("score_keys on known keys") {
  // key [5,2,3,1,4]: absolute displacements {4, eps, eps, 3, 1}, mean 1.6 + 2eps/5
  const KeyGroup g{{PermutationKey::from_one_line({5, 2, 3, 1, 4})}};
  MenuSpec m = simple_menu(5, 1.6);
  const auto report = score_keys(g, m);
  REQUIRE(report.constraints.size() == 1);
  CHECK(report.constraints[0].achieved == doctest::Approx(1.6).epsilon(1e-5));
  CHECK(report.constraints[0].satisfied);
  CHECK(report.all_satisfied);
  CHECK(report.residual == doctest::Approx(0.0));
}

TEST_CASE("score_keys reports violations with positive residual") {
  const KeyGroup g = KeyGroup::identity(5, 1);
  MenuSpec m = simple_menu(5, 2.0, Comparator::kAtLeast);
  const auto report = score_keys(g, m);
  CHECK_FALSE(report.all_satisfied);
  CHECK(report.residual > 0.0);
  CHECK_FALSE(report.constraints[0].satisfied);
}

TEST_CASE("score_keys handles pair constraints") {
  const auto k1 = PermutationKey::from_one_line({5, 2, 3, 1, 4});
  const KeyGroup g{{k1, k1}};
  MenuSpec m;
  m.n = 5;
  m.attributes.push_back({"a1", std::nullopt, {}});
  m.attributes.push_back({"a2", std::nullopt, {}});
  m.pairs.push_back({"a1", "a2", {{2.0, Comparator::kAtMost, 0.001, 1.0}}});
  // identical keys: relative displacement is epsilon everywhere
  const auto report = score_keys(g, m);
  CHECK(report.all_satisfied);
  CHECK(report.constraints[0].achieved == doctest::Approx(kDefaultEpsilon).epsilon(1e-6));
}

TEST_CASE("score_keys honors displacement floors") {
  MenuSpec m;
  m.n = 6;
  m.attributes.push_back({"a1", 1, {}});
  const KeyGroup moved{{PermutationKey::from_one_line({2, 1, 4, 3, 6, 5})}};
  CHECK(score_keys(moved, m).all_satisfied);
  CHECK_FALSE(score_keys(KeyGroup::identity(6, 1), m).all_satisfied);
}

TEST_CASE("normalized menus rescale targets by n-1") {
  const KeyGroup g{{PermutationKey::from_one_line({5, 2, 3, 1, 4})}};
  MenuSpec m = simple_menu(5, 1.6 / 4.0);
  m.normalized = true;
  const auto report = score_keys(g, m);
  CHECK(report.constraints[0].achieved == doctest::Approx(0.4).epsilon(1e-5));
  CHECK(report.all_satisfied);
}

TEST_CASE("synthesis meets a single approximate mean target") {
  MenuSpec m = simple_menu(60, 12.0);
  const auto [keys, report] = synthesize_keys(m, 1, 20000);
  CHECK(report.all_satisfied);
  CHECK(score_keys(keys, m).all_satisfied);
  CHECK(keys.n() == 60);
  CHECK(keys.p() == 1);
}

TEST_CASE("synthesis is deterministic per seed") {
  MenuSpec m = simple_menu(40, 8.0);
  const auto a = synthesize_keys(m, 7, 10000);
  const auto b = synthesize_keys(m, 7, 10000);
  CHECK(a.first == b.first);
  CHECK(a.second.seed == b.second.seed);
}

TEST_CASE("synthesis handles floors and inequality constraints") {
  MenuSpec m;
  m.n = 50;
  m.attributes.push_back(
      {"a1", 1, {{1.0, Comparator::kAtLeast, 5.0, 1.0}, {1.0, Comparator::kAtMost, 20.0, 1.0}}});
  const auto [keys, report] = synthesize_keys(m, 3, 30000);
  CHECK(report.all_satisfied);
  for (long long s : keys.keys[0].signed_displacement()) CHECK(std::llabs(s) >= 1);
}

TEST_CASE("synthesis of a tight pair menu") {
  MenuSpec m;
  m.n = 40;
  m.attributes.push_back({"a1", std::nullopt, {{1.0, Comparator::kApprox, 6.0, 1.0}}});
  m.attributes.push_back({"a2", std::nullopt, {{1.0, Comparator::kApprox, 6.0, 1.0}}});
  m.pairs.push_back({"a1", "a2", {{1.0, Comparator::kAtMost, 2.0, 1.0}}});
  const auto [keys, report] = synthesize_keys(m, 5, 60000);
  CHECK(report.all_satisfied);
}

TEST_CASE("contradictory menus raise without searching") {
  MenuSpec m = simple_menu(10, 9.5, Comparator::kAtLeast);
  CHECK_THROWS_AS(synthesize_keys(m, 1, 1000), InfeasibleError);
}

TEST_CASE("exhausted budget raises and carries the best attempt") {
  // satisfiable in principle but hopeless with a tiny budget: an exact
  // approximate target with near-zero tolerance
  MenuSpec m = simple_menu(80, 17.3);
  m.tolerance = 1e-12;
  try {
    synthesize_keys(m, 2, 50);
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    REQUIRE(e.best_keys.has_value());
    CHECK(e.best_keys->n() == 80);
    CHECK_FALSE(e.report.all_satisfied);
    CHECK(e.report.residual > 0.0);
  }
}

TEST_CASE("even-n full-movement feasibility witness") {
  // adjacent transpositions move every record exactly one rank
  MenuSpec m;
  m.n = 30;
  m.attributes.push_back({"a1", 1, {{1.0, Comparator::kApprox, 1.0, 1.0}}});
  const auto [keys, report] = synthesize_keys(m, 9, 20000);
  CHECK(report.all_satisfied);
  for (long long s : keys.keys[0].signed_displacement()) CHECK(std::llabs(s) == 1);
}
