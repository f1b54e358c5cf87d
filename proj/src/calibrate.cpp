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

#include "permcipher/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace permcipher {

namespace {

const char* cmp_word(Comparator c) {
  switch (c) {
    case Comparator::kAtLeast: return ">=";
    case Comparator::kAtMost: return "<=";
    default: return "~=";
  }
}

double measure_attribute(const PermutationKey& key, double alpha, double epsilon, bool normalized) {
  const double v = power_mean(key.displacement(epsilon).absolute, alpha);
  return normalized ? v / static_cast<double>(key.size() - 1) : v;
}

double measure_pair(const PermutationKey& a, const PermutationKey& b, double alpha, double epsilon,
                    bool normalized) {
  const double v = power_mean(relative_displacement(a, b, epsilon).values, alpha);
  return normalized ? v / static_cast<double>(a.size() - 1) : v;
}

long long min_abs_displacement(const PermutationKey& key) {
  long long best = std::numeric_limits<long long>::max();
  const auto s = key.signed_displacement();
  for (long long v : s) best = std::min(best, std::llabs(v));
  return best;
}

// Tolerance-adjusted violation; zero means satisfied.
double constraint_violation(const MenuConstraint& c, double achieved, double tolerance) {
  double raw = 0.0;
  switch (c.cmp) {
    case Comparator::kAtLeast: raw = c.target - achieved; break;
    case Comparator::kAtMost: raw = achieved - c.target; break;
    case Comparator::kApprox: raw = std::abs(achieved - c.target) - tolerance * std::abs(c.target); break;
  }
  return std::max(0.0, raw);
}

double relative(double violation, double target) {
  return violation / std::max(std::abs(target), 1e-12);
}

}  // namespace

std::size_t MenuSpec::attribute_index(const std::string& name) const {
  for (std::size_t j = 0; j < attributes.size(); ++j)
    if (attributes[j].name == name) return j;
  throw ValidationError("menu references unknown attribute '" + name + "'");
}

std::vector<MenuDiagnostic> validate_menu(const MenuSpec& menu) {
  std::vector<MenuDiagnostic> out;
  if (menu.n < 2) {
    out.push_back({Severity::kContradiction, "menu record count must be >= 2"});
    return out;
  }
  const double max_target = menu.normalized ? 1.0 : static_cast<double>(menu.n - 1);

  auto check_constraints = [&](const std::vector<MenuConstraint>& cs, const std::string& where,
                               bool is_pair) {
    for (const auto& c : cs) {
      if (!is_pair && c.alpha > 1.0)
        out.push_back({Severity::kContradiction, where + ": risk constraint requires alpha <= 1"});
      if (is_pair && c.alpha < 1.0)
        out.push_back({Severity::kContradiction, where + ": pair constraint requires alpha >= 1"});
      if (c.target > max_target)
        out.push_back({Severity::kContradiction,
                       where + ": target " + std::to_string(c.target) +
                           " exceeds the maximum feasible displacement " + std::to_string(max_target)});
      if (!(c.weight > 0.0))
        out.push_back({Severity::kContradiction, where + ": weights must be > 0"});
    }
    // Power means are nondecreasing in alpha, so a lower bound at some
    // alpha must not exceed an upper bound at any alpha above it.
    for (const auto& lo : cs) {
      if (lo.cmp == Comparator::kAtMost) continue;
      const double lo_bound =
          lo.cmp == Comparator::kApprox ? lo.target * (1.0 - menu.tolerance) : lo.target;
      for (const auto& hi : cs) {
        if (hi.cmp == Comparator::kAtLeast || &hi == &lo) continue;
        const double hi_bound =
            hi.cmp == Comparator::kApprox ? hi.target * (1.0 + menu.tolerance) : hi.target;
        if (hi.alpha >= lo.alpha && hi_bound < lo_bound)
          out.push_back({Severity::kContradiction,
                         where + ": bounds at alpha " + std::to_string(lo.alpha) + " and " +
                             std::to_string(hi.alpha) + " bracket an empty interval"});
      }
    }
  };

  for (const auto& attr : menu.attributes) {
    const std::string where = "attribute '" + attr.name + "'";
    check_constraints(attr.constraints, where, false);
    if (attr.min_displacement) {
      const long long f = *attr.min_displacement;
      if (f < 0) out.push_back({Severity::kContradiction, where + ": negative displacement floor"});
      if (f > static_cast<long long>(menu.n - 1))
        out.push_back({Severity::kContradiction, where + ": floor exceeds n-1"});
      const double floor_in_units = menu.normalized
                                        ? static_cast<double>(f) / static_cast<double>(menu.n - 1)
                                        : static_cast<double>(f);
      for (const auto& c : attr.constraints) {
        // All records moved >= f ranks forces every power mean >= f.
        if (f >= 1 && c.cmp != Comparator::kAtLeast &&
            c.target * (1.0 + menu.tolerance) < floor_in_units)
          out.push_back({Severity::kContradiction,
                         where + ": floor " + std::to_string(f) + " is incompatible with target " +
                             std::to_string(c.target) + " at alpha " + std::to_string(c.alpha)});
      }
    }
  }

  for (const auto& pair : menu.pairs) {
    const std::string where = "pair ('" + pair.first + "', '" + pair.second + "')";
    std::size_t ja = 0, jb = 0;
    try {
      ja = menu.attribute_index(pair.first);
      jb = menu.attribute_index(pair.second);
    } catch (const ValidationError& e) {
      out.push_back({Severity::kContradiction, e.what()});
      continue;
    }
    check_constraints(pair.constraints, where, true);

    // Coherency: a near-zero relative-displacement target demands nearly
    // identical keys, which clashes with dissimilar per-attribute demands.
    double smallest_pair_target = std::numeric_limits<double>::infinity();
    for (const auto& c : pair.constraints)
      if (c.cmp != Comparator::kAtLeast) smallest_pair_target = std::min(smallest_pair_target, c.target);
    const double near_zero = menu.normalized ? 0.05 : 0.05 * static_cast<double>(menu.n - 1);
    if (smallest_pair_target < near_zero) {
      const auto& a = menu.attributes[ja];
      const auto& b = menu.attributes[jb];
      for (const auto& ca : a.constraints)
        for (const auto& cb : b.constraints)
          if (ca.alpha == cb.alpha &&
              std::abs(ca.target - cb.target) > std::max(smallest_pair_target, 1.0))
            out.push_back({Severity::kWarning,
                           where + ": attributes request dissimilar risk profiles at alpha " +
                               std::to_string(ca.alpha) +
                               " while their joint distribution must be closely preserved"});
      const bool fa = a.min_displacement.value_or(0) >= 1;
      const bool fb = b.min_displacement.value_or(0) >= 1;
      if (fa != fb)
        out.push_back({Severity::kWarning,
                       where + ": one attribute must displace every record while the other need "
                               "not, yet the pair target is near zero"});
    }
  }
  return out;
}

CalibrationReport score_keys(const KeyGroup& keys, const MenuSpec& menu, double epsilon) {
  if (keys.p() != menu.attributes.size())
    throw DimensionError("key group has " + std::to_string(keys.p()) + " keys but the menu lists " +
                         std::to_string(menu.attributes.size()) + " attributes");
  if (keys.n() != menu.n) throw DimensionError("key size does not match menu record count");

  CalibrationReport report;
  auto add = [&](const std::string& label, double alpha, Comparator cmp, double target,
                 double weight, double achieved, double violation) {
    ConstraintResult r;
    r.label = label;
    r.alpha = alpha;
    r.cmp = cmp;
    r.target = target;
    r.achieved = achieved;
    r.weight = weight;
    r.satisfied = violation <= 0.0;
    report.constraints.push_back(std::move(r));
    const double rv = relative(std::max(0.0, violation), target);
    report.residual += weight * rv * rv;
  };

  for (std::size_t j = 0; j < menu.attributes.size(); ++j) {
    const auto& attr = menu.attributes[j];
    const std::string label = "attr " + attr.name;
    if (attr.min_displacement && *attr.min_displacement >= 1) {
      const long long f = *attr.min_displacement;
      const long long got = min_abs_displacement(keys.keys[j]);
      add(label + " floor", 1.0, Comparator::kAtLeast, static_cast<double>(f), 1.0,
          static_cast<double>(got), static_cast<double>(f - got));
    }
    for (const auto& c : attr.constraints) {
      const double a = measure_attribute(keys.keys[j], c.alpha, epsilon, menu.normalized);
      add(label + " " + cmp_word(c.cmp) + " @ alpha " + std::to_string(c.alpha), c.alpha, c.cmp,
          c.target, c.weight, a, constraint_violation(c, a, menu.tolerance));
    }
  }
  for (const auto& pair : menu.pairs) {
    const std::size_t ja = menu.attribute_index(pair.first);
    const std::size_t jb = menu.attribute_index(pair.second);
    const std::string label = "pair " + pair.first + "/" + pair.second;
    for (const auto& c : pair.constraints) {
      const double a = measure_pair(keys.keys[ja], keys.keys[jb], c.alpha, epsilon, menu.normalized);
      add(label + " " + cmp_word(c.cmp) + " @ alpha " + std::to_string(c.alpha), c.alpha, c.cmp,
          c.target, c.weight, a, constraint_violation(c, a, menu.tolerance));
    }
  }
  report.all_satisfied = std::all_of(report.constraints.begin(), report.constraints.end(),
                                     [](const ConstraintResult& r) { return r.satisfied; });
  return report;
}

namespace {

// Smooth search objective: squared relative error without the approx
// tolerance deadband, so the annealer keeps a gradient inside the band.
double smooth_objective(const KeyGroup& keys, const MenuSpec& menu, double epsilon) {
  double obj = 0.0;
  for (std::size_t j = 0; j < menu.attributes.size(); ++j) {
    const auto& attr = menu.attributes[j];
    if (attr.min_displacement && *attr.min_displacement >= 1) {
      const double f = static_cast<double>(*attr.min_displacement);
      const double got = static_cast<double>(min_abs_displacement(keys.keys[j]));
      const double rv = std::max(0.0, f - got) / f;
      obj += rv * rv;
    }
    for (const auto& c : attr.constraints) {
      const double a = measure_attribute(keys.keys[j], c.alpha, epsilon, menu.normalized);
      double raw = 0.0;
      switch (c.cmp) {
        case Comparator::kAtLeast: raw = std::max(0.0, c.target - a); break;
        case Comparator::kAtMost: raw = std::max(0.0, a - c.target); break;
        case Comparator::kApprox: raw = std::abs(a - c.target); break;
      }
      const double rv = relative(raw, c.target);
      obj += c.weight * rv * rv;
    }
  }
  for (const auto& pair : menu.pairs) {
    const std::size_t ja = menu.attribute_index(pair.first);
    const std::size_t jb = menu.attribute_index(pair.second);
    for (const auto& c : pair.constraints) {
      const double a = measure_pair(keys.keys[ja], keys.keys[jb], c.alpha, epsilon, menu.normalized);
      double raw = 0.0;
      switch (c.cmp) {
        case Comparator::kAtLeast: raw = std::max(0.0, c.target - a); break;
        case Comparator::kAtMost: raw = std::max(0.0, a - c.target); break;
        case Comparator::kApprox: raw = std::abs(a - c.target); break;
      }
      const double rv = relative(raw, c.target);
      obj += c.weight * rv * rv;
    }
  }
  return obj;
}

// Identity-based local shuffle: positions outside the fixed set are
// swapped with partners at most `window` away.
std::vector<std::size_t> windowed_shuffle(std::size_t n, std::size_t window, double fixed_fraction,
                                          std::mt19937_64& rng) {
  std::vector<std::size_t> map(n);
  std::iota(map.begin(), map.end(), std::size_t{0});
  std::vector<char> fixed(n, 0);
  const std::size_t n_fixed = static_cast<std::size_t>(std::lround(fixed_fraction * static_cast<double>(n)));
  if (n_fixed > 0) {
    std::vector<std::size_t> pos(n);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    for (std::size_t i = 0; i < n_fixed && i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(pos[i], pos[pick(rng)]);
      fixed[pos[i]] = 1;
    }
  }
  const std::size_t w = std::max<std::size_t>(1, std::min(window, n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (fixed[i]) continue;
    const std::size_t lo = i >= w ? i - w : 0;
    const std::size_t hi = std::min(i + w, n - 1);
    std::uniform_int_distribution<std::size_t> pick(lo, hi);
    for (int attempt = 0; attempt < 8; ++attempt) {
      const std::size_t j = pick(rng);
      if (!fixed[j]) {
        std::swap(map[i], map[j]);
        break;
      }
    }
  }
  return map;
}

// Rotates blocks of size ~2d by d: every position is displaced at least
// d ranks, with mean close to d. The workhorse for floored attributes.
std::vector<std::size_t> block_rotation(std::size_t n, std::size_t d) {
  d = std::clamp<std::size_t>(d, 1, n / 2);
  std::vector<std::size_t> map(n);
  const std::size_t q = std::max<std::size_t>(1, n / (2 * d));
  std::size_t start = 0;
  for (std::size_t b = 0; b < q; ++b) {
    const std::size_t len = (b + 1 == q) ? n - start : 2 * d;
    for (std::size_t k = 0; k < len; ++k) map[start + k] = start + (k + d) % len;
    start += len;
  }
  return map;
}

struct SearchState {
  std::vector<std::vector<std::size_t>> maps;  // one-line maps per attribute

  KeyGroup to_group() const {
    std::vector<PermutationKey> ks;
    ks.reserve(maps.size());
    for (const auto& m : maps) ks.push_back(PermutationKey(m));
    return KeyGroup(ks);
  }
};

// Initial guess driven by the menu: window from the mean-level target,
// fixed-point fraction back-solved from the most negative alpha target.
std::vector<std::size_t> initial_map(const MenuSpec& menu, const AttributeMenu& attr,
                                     double epsilon, std::mt19937_64& rng) {
  const std::size_t n = menu.n;
  const double unit = menu.normalized ? static_cast<double>(n - 1) : 1.0;
  double mean_target = 0.0;
  bool have_mean = false;
  double neg_alpha = 1.0, neg_target = 0.0;
  for (const auto& c : attr.constraints) {
    if (c.cmp == Comparator::kAtMost) continue;
    if (std::abs(c.alpha - 1.0) < 1e-12 && !have_mean) {
      mean_target = c.target * unit;
      have_mean = true;
    }
    if (c.alpha < neg_alpha) {
      neg_alpha = c.alpha;
      neg_target = c.target * unit;
    }
  }
  double fixed_fraction = 0.0;
  if (attr.min_displacement.value_or(0) < 1 && neg_alpha < 0.0 && neg_target > 0.0 &&
      neg_target < 0.5) {
    // A sub-1 value at negative alpha is dominated by the epsilon floor:
    // J(-1) ~ n*eps/k, J(-2) ~ eps*sqrt(n/k) for k floored entries.
    double k = 0.0;
    if (neg_alpha <= -1.5)
      k = static_cast<double>(n) * epsilon * epsilon / (neg_target * neg_target);
    else
      k = static_cast<double>(n) * epsilon / neg_target;
    fixed_fraction = std::clamp(k / static_cast<double>(n), 0.0, 0.9);
  }
  const long long floor_f = attr.min_displacement.value_or(0);
  if (floor_f >= 1) {
    const double d_t = have_mean && mean_target >= static_cast<double>(floor_f)
                           ? mean_target
                           : static_cast<double>(floor_f);
    const std::size_t d = static_cast<std::size_t>(std::clamp(
        std::llround(d_t), floor_f, static_cast<long long>(n / 2)));
    return block_rotation(n, d);
  }
  std::size_t window = n - 1;
  if (have_mean && mean_target > 0.0)
    window = static_cast<std::size_t>(std::clamp(2.0 * mean_target, 1.0, static_cast<double>(n - 1)));
  return windowed_shuffle(n, window, fixed_fraction, rng);
}

}  // namespace

std::pair<KeyGroup, CalibrationReport> synthesize_keys(const MenuSpec& menu, std::uint64_t seed,
                                                       std::uint64_t budget,
                                                       const SynthesisOptions& opts) {
  const auto diags = validate_menu(menu);
  for (const auto& d : diags)
    if (d.severity == Severity::kContradiction)
      throw InfeasibleError("contradictory menu: " + d.message);
  if (menu.attributes.empty()) throw ValidationError("menu lists no attributes");
  const std::size_t n = menu.n;
  const std::size_t p = menu.attributes.size();
  const double epsilon = opts.epsilon;

  const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
  const std::uint64_t per_restart = std::max<std::uint64_t>(1, budget / restarts);

  bool have_best = false;
  double best_obj = std::numeric_limits<double>::infinity();
  KeyGroup best_keys;
  CalibrationReport best_report;
  std::uint64_t spent = 0;

  for (std::size_t restart = 0; restart < restarts && spent < budget; ++restart) {
    std::mt19937_64 rng(derive_seed(seed, restart));
    SearchState state;
    state.maps.reserve(p);
    for (const auto& attr : menu.attributes) state.maps.push_back(initial_map(menu, attr, epsilon, rng));

    KeyGroup group = state.to_group();
    double obj = smooth_objective(group, menu, epsilon);

    const double t0 = std::max(obj * 0.1, 1e-3);
    const double t_end = 1e-7;
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    for (std::uint64_t it = 0; it < per_restart && spent < budget; ++it, ++spent) {
      const double frac = static_cast<double>(it) / static_cast<double>(per_restart);
      const double temp = t0 * std::pow(t_end / t0, frac);

      SearchState proposal = state;
      std::uniform_int_distribution<std::size_t> pick_attr(0, p - 1);
      const std::size_t j = pick_attr(rng);
      auto& map = proposal.maps[j];
      const long long floor_j = menu.attributes[j].min_displacement.value_or(0);
      const int move = static_cast<int>(rng() % 100);

      if (move < 60) {
        // swap two entries within a random window
        std::uniform_int_distribution<std::size_t> pick_pos(0, n - 1);
        const std::size_t i = pick_pos(rng);
        const int exp = static_cast<int>(rng() % 10);
        const std::size_t w = std::min<std::size_t>(n - 1, std::size_t{1} << (exp % 10));
        std::uniform_int_distribution<std::size_t> pick_off(1, w);
        const std::size_t off = pick_off(rng);
        const std::size_t k = (rng() & 1) ? std::min(i + off, n - 1) : (i >= off ? i - off : 0);
        if (k == i) continue;
        std::swap(map[i], map[k]);
      } else if (move < 75) {
        if (floor_j >= 1) {
          // fixed points are off limits; re-draw as a block rotation
          std::uniform_int_distribution<std::size_t> pick_d(
              static_cast<std::size_t>(floor_j), std::max<std::size_t>(static_cast<std::size_t>(floor_j), n / 2));
          map = block_rotation(n, pick_d(rng));
          proposal.maps[j] = map;
        } else {
          // force a fixed point at a random position
          std::uniform_int_distribution<std::size_t> pick_pos(0, n - 1);
          const std::size_t i = pick_pos(rng);
          if (map[i] == i) continue;
          std::size_t src = 0;
          for (std::size_t q = 0; q < n; ++q)
            if (map[q] == i) { src = q; break; }
          std::swap(map[i], map[src]);
        }
      } else if (move < 90) {
        // break a fixed point with a nearby partner
        std::vector<std::size_t> fps;
        for (std::size_t q = 0; q < n; ++q)
          if (map[q] == q) fps.push_back(q);
        if (fps.empty()) continue;
        std::uniform_int_distribution<std::size_t> pick_fp(0, fps.size() - 1);
        const std::size_t i = fps[pick_fp(rng)];
        std::uniform_int_distribution<std::size_t> pick_off(1, std::max<std::size_t>(1, n / 8));
        const std::size_t off = pick_off(rng);
        const std::size_t k = (rng() & 1) ? std::min(i + off, n - 1) : (i >= off ? i - off : 0);
        if (k == i) continue;
        std::swap(map[i], map[k]);
      } else if (move < 95 || menu.pairs.empty()) {
        // re-draw the whole key
        if (floor_j >= 1) {
          std::uniform_int_distribution<std::size_t> pick_d(
              static_cast<std::size_t>(floor_j), std::max<std::size_t>(static_cast<std::size_t>(floor_j), n / 2));
          map = block_rotation(n, pick_d(rng));
        } else {
          std::uniform_int_distribution<std::size_t> pick_w(1, n - 1);
          std::uniform_real_distribution<double> pick_phi(0.0, 0.5);
          map = windowed_shuffle(n, pick_w(rng), pick_phi(rng), rng);
        }
      } else {
        // re-derive one side of a constrained pair from the other
        std::uniform_int_distribution<std::size_t> pick_pair(0, menu.pairs.size() - 1);
        const auto& pr = menu.pairs[pick_pair(rng)];
        const std::size_t ja = menu.attribute_index(pr.first);
        const std::size_t jb = menu.attribute_index(pr.second);
        const std::size_t src = (rng() & 1) ? ja : jb;
        const std::size_t dst = src == ja ? jb : ja;
        double delta_target = 2.0;
        for (const auto& c : pr.constraints)
          if (std::abs(c.alpha - 1.0) < 1e-12)
            delta_target = c.target * (menu.normalized ? static_cast<double>(n - 1) : 1.0);
        const std::size_t w = static_cast<std::size_t>(
            std::clamp(delta_target, 1.0, static_cast<double>(n - 1)));
        std::uniform_real_distribution<double> pick_phi(0.0, 0.5);
        const PermutationKey perturbation(windowed_shuffle(n, w, pick_phi(rng), rng));
        const PermutationKey base(proposal.maps[src]);
        proposal.maps[dst] = compose(perturbation, base).map();
      }

      const KeyGroup candidate = proposal.to_group();
      const double candidate_obj = smooth_objective(candidate, menu, epsilon);
      const double delta = candidate_obj - obj;
      if (delta <= 0.0 || unit(rng) < std::exp(-delta / temp)) {
        state = std::move(proposal);
        obj = candidate_obj;
        if (obj < best_obj) {
          best_obj = obj;
          best_keys = candidate;
          best_report = score_keys(candidate, menu, epsilon);
          have_best = true;
          if (best_report.all_satisfied) {
            best_report.iterations = spent + 1;
            best_report.seed = seed;
            return {best_keys, best_report};
          }
        }
      }
    }
  }

  if (!have_best) {
    std::mt19937_64 rng(derive_seed(seed, 0));
    SearchState state;
    for (const auto& attr : menu.attributes) state.maps.push_back(initial_map(menu, attr, epsilon, rng));
    best_keys = state.to_group();
    best_report = score_keys(best_keys, menu, epsilon);
  }
  best_report.iterations = spent;
  best_report.seed = seed;
  if (!best_report.all_satisfied)
    throw InfeasibleError("search budget exhausted with unmet constraints", best_keys, best_report);
  return {best_keys, best_report};
}

}  // namespace permcipher
