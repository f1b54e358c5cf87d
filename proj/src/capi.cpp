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

#include "permcipher.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "permcipher/attack.hpp"
#include "permcipher/calibrate.hpp"
#include "permcipher/emulate.hpp"
#include "permcipher/io.hpp"
#include "permcipher/metrics.hpp"
#include "permcipher/rank_map.hpp"

using namespace permcipher;

struct pc_dataset {
  Dataset data;
};
struct pc_keygroup {
  KeyGroup keys;
  std::vector<std::string> names;
};
struct pc_menu {
  MenuSpec menu;
};

namespace {

thread_local std::string g_last_error;

pc_status fail(pc_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Maps the C++ error hierarchy onto status codes.
template <typename Fn>
pc_status guarded(Fn&& fn) {
  try {
    fn();
    return PC_OK;
  } catch (const InvalidSizeError& e) {
    return fail(PC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const DimensionError& e) {
    return fail(PC_ERR_DIMENSION, e.what());
  } catch (const ParseError& e) {
    return fail(PC_ERR_PARSE, e.what());
  } catch (const InfeasibleError& e) {
    return fail(PC_ERR_INFEASIBLE, e.what());
  } catch (const ValidationError& e) {
    return fail(PC_ERR_VALIDATION, e.what());
  } catch (const DomainError& e) {
    return fail(PC_ERR_DOMAIN, e.what());
  } catch (const RangeError& e) {
    return fail(PC_ERR_RANGE, e.what());
  } catch (const ParameterError& e) {
    return fail(PC_ERR_INVALID_ARGUMENT, e.what());
  } catch (const DegenerateInputError& e) {
    return fail(PC_ERR_DEGENERATE, e.what());
  } catch (const InvalidDataError& e) {
    return fail(PC_ERR_VALIDATION, e.what());
  } catch (const Error& e) {
    return fail(PC_ERR_INTERNAL, e.what());
  } catch (const std::exception& e) {
    return fail(PC_ERR_INTERNAL, e.what());
  }
}

pc_status require(const void* ptr, const char* what) {
  if (ptr) return PC_OK;
  return fail(PC_ERR_INVALID_ARGUMENT, std::string("null ") + what);
}

std::vector<std::string> pair_labels(const pc_keygroup* kg) {
  std::vector<std::string> names = kg->names;
  if (names.size() != kg->keys.p()) {
    names.clear();
    for (std::size_t j = 0; j < kg->keys.p(); ++j) names.push_back("a" + std::to_string(j + 1));
  }
  return names;
}

}  // namespace

extern "C" {

const char* pc_version(void) { return PC_VERSION_STRING; }

const char* pc_last_error(void) { return g_last_error.c_str(); }

void pc_string_free(char* s) { std::free(s); }

pc_status pc_dataset_load_csv(const char* path, int has_header, pc_dataset** out) {
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] { *out = new pc_dataset{load_dataset(path, has_header != 0)}; });
}

pc_status pc_dataset_save_csv(const pc_dataset* ds, const char* path) {
  if (pc_status s = require(ds, "dataset"); s != PC_OK) return s;
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  return guarded([&] { save_dataset(ds->data, path); });
}

void pc_dataset_free(pc_dataset* ds) { delete ds; }

size_t pc_dataset_rows(const pc_dataset* ds) { return ds ? ds->data.n() : 0; }
size_t pc_dataset_cols(const pc_dataset* ds) { return ds ? ds->data.p() : 0; }

pc_status pc_ranks_to_csv(const pc_dataset* ds, int descending, const char* path) {
  if (pc_status s = require(ds, "dataset"); s != PC_OK) return s;
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  return guarded([&] {
    const RankDirection dir = descending ? RankDirection::kDescending : RankDirection::kAscending;
    std::ostringstream os;
    os << "id";
    for (const auto& name : ds->data.column_names) os << "," << name;
    os << "\n";
    std::vector<std::vector<std::size_t>> all;
    for (const auto& col : ds->data.columns) all.push_back(ranks(col, dir));
    for (std::size_t r = 0; r < ds->data.n(); ++r) {
      os << ds->data.record_ids[r];
      for (const auto& col : all) os << "," << col[r];
      os << "\n";
    }
    std::ofstream file(path);
    if (!file) throw ParseError(std::string("cannot write file: ") + path);
    file << os.str();
  });
}

pc_status pc_reverse_map(const pc_dataset* x, const pc_dataset* y, pc_dataset** out) {
  if (pc_status s = require(x, "original dataset"); s != PC_OK) return s;
  if (pc_status s = require(y, "masked dataset"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] { *out = new pc_dataset{reverse_map(x->data, y->data)}; });
}

pc_status pc_residual_noise(const pc_dataset* x, const pc_dataset* y, pc_dataset** out) {
  if (pc_status s = require(x, "original dataset"); s != PC_OK) return s;
  if (pc_status s = require(y, "masked dataset"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] {
    Dataset e;
    e.record_ids = x->data.record_ids;
    e.column_names = x->data.column_names;
    e.columns = residual_noise(x->data, y->data);
    *out = new pc_dataset{std::move(e)};
  });
}

pc_status pc_extract_keys(const pc_dataset* x, const pc_dataset* y, pc_keygroup** out) {
  if (pc_status s = require(x, "original dataset"); s != PC_OK) return s;
  if (pc_status s = require(y, "masked dataset"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] {
    *out = new pc_keygroup{extract_key_group(x->data, y->data), x->data.column_names};
  });
}

pc_status pc_encrypt(const pc_dataset* x, const pc_keygroup* keys, pc_dataset** out) {
  if (pc_status s = require(x, "dataset"); s != PC_OK) return s;
  if (pc_status s = require(keys, "key group"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] { *out = new pc_dataset{encrypt(x->data, keys->keys)}; });
}

pc_status pc_keys_identity(size_t n, size_t p, pc_keygroup** out) {
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] { *out = new pc_keygroup{KeyGroup::identity(n, p), {}}; });
}

pc_status pc_keys_random(size_t n, size_t p, uint64_t seed, pc_keygroup** out) {
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] { *out = new pc_keygroup{KeyGroup::random(n, p, seed), {}}; });
}

pc_status pc_keys_load(const char* path, pc_keygroup** out) {
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] {
    std::vector<std::string> names;
    KeyGroup kg = load_keys(path, &names);
    *out = new pc_keygroup{std::move(kg), std::move(names)};
  });
}

pc_status pc_keys_save(const pc_keygroup* keys, const char* path, int as_matrix) {
  if (pc_status s = require(keys, "key group"); s != PC_OK) return s;
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  return guarded([&] { save_keys(keys->keys, path, keys->names, as_matrix != 0); });
}

void pc_keys_free(pc_keygroup* keys) { delete keys; }

size_t pc_keys_n(const pc_keygroup* keys) { return keys ? keys->keys.n() : 0; }
size_t pc_keys_p(const pc_keygroup* keys) { return keys ? keys->keys.p() : 0; }

pc_status pc_risk_curves_to_csv(const pc_keygroup* keys, double alpha_min, double alpha_max,
                                double alpha_step, double epsilon, int normalize, const char* path) {
  if (pc_status s = require(keys, "key group"); s != PC_OK) return s;
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  return guarded([&] {
    const auto grid = make_alpha_grid(alpha_min, alpha_max, alpha_step);
    const auto labels = pair_labels(keys);
    std::vector<LabeledCurve> curves;
    for (std::size_t j = 0; j < keys->keys.p(); ++j)
      curves.push_back({labels[j], risk_profile(keys->keys.keys[j], grid, epsilon, normalize != 0)});
    save_curves(curves, path);
  });
}

pc_status pc_loss_curves_to_csv(const pc_keygroup* keys, double alpha_min, double alpha_max,
                                double alpha_step, double epsilon, int normalize, const char* path) {
  if (pc_status s = require(keys, "key group"); s != PC_OK) return s;
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  return guarded([&] {
    const auto grid = make_alpha_grid(alpha_min, alpha_max, alpha_step);
    const auto labels = pair_labels(keys);
    std::vector<LabeledCurve> curves;
    for (std::size_t a = 0; a < keys->keys.p(); ++a)
      for (std::size_t b = a + 1; b < keys->keys.p(); ++b)
        curves.push_back({labels[a] + "|" + labels[b],
                          info_loss_profile(keys->keys.keys[a], keys->keys.keys[b], grid, epsilon,
                                            normalize != 0)});
    save_curves(curves, path);
  });
}

pc_status pc_point_metrics_to_csv(const pc_keygroup* keys, const double* alphas, size_t n_alphas,
                                  double epsilon, int normalize, const char* path) {
  if (pc_status s = require(keys, "key group"); s != PC_OK) return s;
  if (pc_status s = require(alphas, "alpha list"); s != PC_OK) return s;
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  return guarded([&] {
    std::vector<double> risk_alphas, loss_alphas;
    for (size_t i = 0; i < n_alphas; ++i) {
      if (alphas[i] <= 1.0) risk_alphas.push_back(alphas[i]);
      if (alphas[i] >= 1.0) loss_alphas.push_back(alphas[i]);
    }
    std::sort(risk_alphas.begin(), risk_alphas.end());
    std::sort(loss_alphas.begin(), loss_alphas.end());
    risk_alphas.erase(std::unique(risk_alphas.begin(), risk_alphas.end()), risk_alphas.end());
    loss_alphas.erase(std::unique(loss_alphas.begin(), loss_alphas.end()), loss_alphas.end());
    const auto labels = pair_labels(keys);
    std::vector<LabeledCurve> curves;
    if (!risk_alphas.empty())
      for (std::size_t j = 0; j < keys->keys.p(); ++j)
        curves.push_back(
            {labels[j], risk_profile(keys->keys.keys[j], risk_alphas, epsilon, normalize != 0)});
    if (!loss_alphas.empty())
      for (std::size_t a = 0; a < keys->keys.p(); ++a)
        for (std::size_t b = a + 1; b < keys->keys.p(); ++b)
          curves.push_back({labels[a] + "|" + labels[b],
                            info_loss_profile(keys->keys.keys[a], keys->keys.keys[b], loss_alphas,
                                              epsilon, normalize != 0)});
    save_curves(curves, path);
  });
}

pc_status pc_menu_load(const char* path, pc_menu** out) {
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] { *out = new pc_menu{load_menu(path)}; });
}

void pc_menu_free(pc_menu* menu) { delete menu; }

pc_status pc_menu_check(const pc_menu* menu, char** diagnostics, size_t* n_contradictions) {
  if (pc_status s = require(menu, "menu"); s != PC_OK) return s;
  return guarded([&] {
    const auto diags = validate_menu(menu->menu);
    std::size_t hard = 0;
    std::ostringstream os;
    for (const auto& d : diags) {
      if (d.severity == Severity::kContradiction) ++hard;
      os << (d.severity == Severity::kContradiction ? "contradiction: " : "warning: ") << d.message
         << "\n";
    }
    if (diagnostics) *diagnostics = dup_string(os.str());
    if (n_contradictions) *n_contradictions = hard;
  });
}

pc_status pc_calibrate(const pc_menu* menu, uint64_t seed, uint64_t budget, double epsilon,
                       pc_keygroup** out_keys, char** report_json) {
  if (pc_status s = require(menu, "menu"); s != PC_OK) return s;
  try {
    SynthesisOptions opts;
    opts.epsilon = epsilon > 0.0 ? epsilon : kDefaultEpsilon;
    auto [keys, report] = synthesize_keys(menu->menu, seed, budget, opts);
    std::vector<std::string> names;
    for (const auto& a : menu->menu.attributes) names.push_back(a.name);
    if (out_keys) *out_keys = new pc_keygroup{std::move(keys), std::move(names)};
    if (report_json) *report_json = dup_string(report_to_json(report));
    return PC_OK;
  } catch (const InfeasibleError& e) {
    if (e.best_keys) {
      std::vector<std::string> names;
      for (const auto& a : menu->menu.attributes) names.push_back(a.name);
      if (out_keys) *out_keys = new pc_keygroup{*e.best_keys, std::move(names)};
      if (report_json) *report_json = dup_string(report_to_json(e.report));
    }
    return fail(PC_ERR_INFEASIBLE, e.what());
  } catch (const Error& e) {
    return fail(PC_ERR_VALIDATION, e.what());
  } catch (const std::exception& e) {
    return fail(PC_ERR_INTERNAL, e.what());
  }
}

pc_status pc_mask_rank_swap(const pc_dataset* x, double swap_pct, uint64_t seed, pc_dataset** out) {
  if (pc_status s = require(x, "dataset"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] {
    MethodConfig cfg;
    cfg.method = MaskingMethod::kRankSwap;
    cfg.swap_pct = swap_pct;
    cfg.seed = seed;
    *out = new pc_dataset{mask_dataset(x->data, cfg)};
  });
}

pc_status pc_mask_additive_noise(const pc_dataset* x, double noise_ratio, uint64_t seed,
                                 pc_dataset** out) {
  if (pc_status s = require(x, "dataset"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] {
    MethodConfig cfg;
    cfg.method = MaskingMethod::kAdditiveNoise;
    cfg.noise_ratio = noise_ratio;
    cfg.seed = seed;
    *out = new pc_dataset{mask_dataset(x->data, cfg)};
  });
}

pc_status pc_mask_multiplicative_noise(const pc_dataset* x, double lo, double hi, uint64_t seed,
                                       pc_dataset** out) {
  if (pc_status s = require(x, "dataset"); s != PC_OK) return s;
  if (pc_status s = require(out, "output pointer"); s != PC_OK) return s;
  return guarded([&] {
    MethodConfig cfg;
    cfg.method = MaskingMethod::kMultiplicativeNoise;
    cfg.mult_lo = lo;
    cfg.mult_hi = hi;
    cfg.seed = seed;
    *out = new pc_dataset{mask_dataset(x->data, cfg)};
  });
}

pc_status pc_attack_report_to_csv(const pc_dataset* x, const pc_dataset* y, uint64_t seed,
                                  const char* path) {
  if (pc_status s = require(x, "original dataset"); s != PC_OK) return s;
  if (pc_status s = require(y, "masked dataset"); s != PC_OK) return s;
  if (pc_status s = require(path, "path"); s != PC_OK) return s;
  return guarded([&] {
    const ShuffledDataset shuffled = shuffle_records(y->data, seed);
    std::ostringstream os;
    os << "method,strategy,seed,correct_rate\n";
    const struct {
      LinkageMethod method;
      const char* name;
    } methods[] = {{LinkageMethod::kRank, "rank"}, {LinkageMethod::kDistance, "distance"}};
    const struct {
      LinkageStrategy strategy;
      const char* name;
    } strategies[] = {{LinkageStrategy::kGreedy, "greedy"},
                      {LinkageStrategy::kOptimalAssignment, "optimal-assignment"}};
    for (const auto& m : methods)
      for (const auto& st : strategies) {
        const LinkageResult r = link_records(x->data, shuffled, m.method, st.strategy);
        os << m.name << "," << st.name << "," << seed << "," << r.correct_rate << "\n";
      }
    std::ofstream file(path);
    if (!file) throw ParseError(std::string("cannot write file: ") + path);
    file << os.str();
  });
}

}  // extern "C"
