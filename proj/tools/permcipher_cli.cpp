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

// Command-line front end. Links only the public C API.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "permcipher.h"

namespace {

struct GlobalConfig {
  std::uint64_t seed = 0;
  double epsilon = 1e-6;
  double alpha_min_risk = -5.0;
  double alpha_max_loss = 5.0;
  double alpha_step = 0.01;
  bool normalize = false;
};

// RAII wrappers over the opaque handles.
using DatasetPtr = std::unique_ptr<pc_dataset, decltype(&pc_dataset_free)>;
using KeysPtr = std::unique_ptr<pc_keygroup, decltype(&pc_keys_free)>;
using MenuPtr = std::unique_ptr<pc_menu, decltype(&pc_menu_free)>;

[[noreturn]] void die(pc_status status) {
  std::fprintf(stderr, "error: %s\n", pc_last_error());
  std::exit(status == PC_ERR_INFEASIBLE ? 2 : 1);
}

void check(pc_status status) {
  if (status != PC_OK) die(status);
}

DatasetPtr load(const std::string& path, bool has_header) {
  pc_dataset* ds = nullptr;
  check(pc_dataset_load_csv(path.c_str(), has_header ? 1 : 0, &ds));
  return DatasetPtr(ds, &pc_dataset_free);
}

KeysPtr load_keys(const std::string& path) {
  pc_keygroup* kg = nullptr;
  check(pc_keys_load(path.c_str(), &kg));
  return KeysPtr(kg, &pc_keys_free);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Permutation cipher toolkit for microdata anonymization"};
  app.require_subcommand(1);
  // global flags may appear before or after the subcommand name
  app.fallthrough();

  GlobalConfig cfg;
  bool no_header = false;
  app.add_option("--seed", cfg.seed, "Root seed for all stochastic stages");
  app.add_option("--epsilon", cfg.epsilon, "Floor for zero displacements")->check(CLI::PositiveNumber);
  app.add_option("--alpha-min", cfg.alpha_min_risk, "Lower alpha bound for risk curves");
  app.add_option("--alpha-max", cfg.alpha_max_loss, "Upper alpha bound for information-loss curves");
  app.add_option("--alpha-step", cfg.alpha_step, "Alpha grid step")->check(CLI::PositiveNumber);
  app.add_flag("--normalize", cfg.normalize, "Report distances as fractions of n-1");
  app.add_flag("--no-header", no_header, "Input CSV files have no header row");

  std::string input, original, masked, keys_path, menu_path, output, report_path, curves_path;
  std::string direction = "descending";
  std::string method = "rank-swap";
  bool as_matrix = false;
  double swap_pct = 0.3, noise_ratio = 0.5, mult_lo = 0.75, mult_hi = 1.25;
  std::uint64_t budget = 100000;
  std::vector<double> point_alphas;

  auto* ranks_cmd = app.add_subcommand("ranks", "Rank vectors of every attribute");
  ranks_cmd->add_option("--input", input)->required();
  ranks_cmd->add_option("--output", output)->required();
  ranks_cmd->add_option("--direction", direction)->check(CLI::IsMember({"ascending", "descending"}));

  auto* rev_cmd = app.add_subcommand("reverse-map", "Original values in masked rank order");
  rev_cmd->add_option("--original", original)->required();
  rev_cmd->add_option("--masked", masked)->required();
  rev_cmd->add_option("--output", output)->required();
  std::string noise_out;
  rev_cmd->add_option("--noise", noise_out, "Also write the residual noise matrix");

  auto* extract_cmd = app.add_subcommand("extract-keys", "Recover permutation keys from a data pair");
  extract_cmd->add_option("--original", original)->required();
  extract_cmd->add_option("--masked", masked)->required();
  extract_cmd->add_option("--output", output)->required();
  extract_cmd->add_flag("--matrix", as_matrix, "Include dense 0/1 matrices in the key file");

  auto* encrypt_cmd = app.add_subcommand("encrypt", "Apply a key group to a dataset");
  encrypt_cmd->add_option("--input", input)->required();
  encrypt_cmd->add_option("--keys", keys_path)->required();
  encrypt_cmd->add_option("--output", output)->required();

  auto* metrics_cmd = app.add_subcommand("metrics", "Power means at chosen aversion parameters");
  metrics_cmd->add_option("--keys", keys_path)->required();
  metrics_cmd->add_option("--alpha", point_alphas, "Aversion parameters (repeatable)")->required();
  metrics_cmd->add_option("--output", output)->required();

  auto* curves_cmd = app.add_subcommand("curves", "Full risk and information-loss curves");
  curves_cmd->add_option("--keys", keys_path)->required();
  curves_cmd->add_option("--risk-output", output, "Risk curves CSV");
  curves_cmd->add_option("--loss-output", curves_path, "Information-loss curves CSV");

  auto* cal_cmd = app.add_subcommand("calibrate", "Synthesize keys from a permutation menu");
  cal_cmd->add_option("--menu", menu_path)->required();
  cal_cmd->add_option("--output", output)->required();
  cal_cmd->add_option("--report", report_path, "Calibration report JSON");
  cal_cmd->add_option("--budget", budget, "Search iteration budget");

  auto* emulate_cmd = app.add_subcommand("emulate", "Classical masking methods");
  emulate_cmd->add_option("--input", input)->required();
  emulate_cmd->add_option("--method", method)
      ->check(CLI::IsMember({"rank-swap", "additive-noise", "multiplicative-noise"}));
  emulate_cmd->add_option("--swap-pct", swap_pct);
  emulate_cmd->add_option("--noise-ratio", noise_ratio);
  emulate_cmd->add_option("--mult-lo", mult_lo);
  emulate_cmd->add_option("--mult-hi", mult_hi);
  emulate_cmd->add_option("--output", output)->required();
  std::string risk_curves_out, loss_curves_out;
  emulate_cmd->add_option("--risk-curves", risk_curves_out, "Risk curves of the retrieved keys");
  emulate_cmd->add_option("--loss-curves", loss_curves_out, "Loss curves of the retrieved keys");

  auto* attack_cmd = app.add_subcommand("attack", "Maximum-knowledge record-linkage attack");
  attack_cmd->add_option("--original", original)->required();
  attack_cmd->add_option("--masked", masked)->required();
  attack_cmd->add_option("--output", output)->required();

  auto* menu_cmd = app.add_subcommand("menu-check", "Validate a permutation menu");
  menu_cmd->add_option("--menu", menu_path)->required();

  CLI11_PARSE(app, argc, argv);
  const bool has_header = !no_header;

  if (ranks_cmd->parsed()) {
    auto ds = load(input, has_header);
    check(pc_ranks_to_csv(ds.get(), direction == "descending" ? 1 : 0, output.c_str()));
  } else if (rev_cmd->parsed()) {
    auto x = load(original, has_header);
    auto y = load(masked, has_header);
    pc_dataset* z = nullptr;
    check(pc_reverse_map(x.get(), y.get(), &z));
    DatasetPtr zp(z, &pc_dataset_free);
    check(pc_dataset_save_csv(zp.get(), output.c_str()));
    if (!noise_out.empty()) {
      pc_dataset* e = nullptr;
      check(pc_residual_noise(x.get(), y.get(), &e));
      DatasetPtr ep(e, &pc_dataset_free);
      check(pc_dataset_save_csv(ep.get(), noise_out.c_str()));
    }
  } else if (extract_cmd->parsed()) {
    auto x = load(original, has_header);
    auto y = load(masked, has_header);
    pc_keygroup* kg = nullptr;
    check(pc_extract_keys(x.get(), y.get(), &kg));
    KeysPtr kp(kg, &pc_keys_free);
    check(pc_keys_save(kp.get(), output.c_str(), as_matrix ? 1 : 0));
  } else if (encrypt_cmd->parsed()) {
    auto x = load(input, has_header);
    auto kg = load_keys(keys_path);
    pc_dataset* y = nullptr;
    check(pc_encrypt(x.get(), kg.get(), &y));
    DatasetPtr yp(y, &pc_dataset_free);
    check(pc_dataset_save_csv(yp.get(), output.c_str()));
  } else if (metrics_cmd->parsed()) {
    auto kg = load_keys(keys_path);
    check(pc_point_metrics_to_csv(kg.get(), point_alphas.data(), point_alphas.size(), cfg.epsilon,
                                  cfg.normalize ? 1 : 0, output.c_str()));
  } else if (curves_cmd->parsed()) {
    if (output.empty() && curves_path.empty()) {
      std::fprintf(stderr, "error: curves needs --risk-output and/or --loss-output\n");
      return 1;
    }
    auto kg = load_keys(keys_path);
    if (!output.empty())
      check(pc_risk_curves_to_csv(kg.get(), cfg.alpha_min_risk, 1.0, cfg.alpha_step, cfg.epsilon,
                                  cfg.normalize ? 1 : 0, output.c_str()));
    if (!curves_path.empty())
      check(pc_loss_curves_to_csv(kg.get(), 1.0, cfg.alpha_max_loss, cfg.alpha_step, cfg.epsilon,
                                  cfg.normalize ? 1 : 0, curves_path.c_str()));
  } else if (cal_cmd->parsed()) {
    pc_menu* menu = nullptr;
    check(pc_menu_load(menu_path.c_str(), &menu));
    MenuPtr mp(menu, &pc_menu_free);
    pc_keygroup* kg = nullptr;
    char* report = nullptr;
    const pc_status status = pc_calibrate(mp.get(), cfg.seed, budget, cfg.epsilon, &kg, &report);
    KeysPtr kp(kg, &pc_keys_free);
    if (report && !report_path.empty()) {
      if (FILE* f = std::fopen(report_path.c_str(), "w")) {
        std::fputs(report, f);
        std::fclose(f);
      }
    }
    pc_string_free(report);
    if (status != PC_OK) die(status);
    check(pc_keys_save(kp.get(), output.c_str(), 0));
  } else if (emulate_cmd->parsed()) {
    auto x = load(input, has_header);
    pc_dataset* y = nullptr;
    if (method == "rank-swap")
      check(pc_mask_rank_swap(x.get(), swap_pct, cfg.seed, &y));
    else if (method == "additive-noise")
      check(pc_mask_additive_noise(x.get(), noise_ratio, cfg.seed, &y));
    else
      check(pc_mask_multiplicative_noise(x.get(), mult_lo, mult_hi, cfg.seed, &y));
    DatasetPtr yp(y, &pc_dataset_free);
    check(pc_dataset_save_csv(yp.get(), output.c_str()));
    if (!risk_curves_out.empty() || !loss_curves_out.empty()) {
      pc_keygroup* kg = nullptr;
      check(pc_extract_keys(x.get(), yp.get(), &kg));
      KeysPtr kp(kg, &pc_keys_free);
      if (!risk_curves_out.empty())
        check(pc_risk_curves_to_csv(kp.get(), cfg.alpha_min_risk, 1.0, cfg.alpha_step, cfg.epsilon,
                                    cfg.normalize ? 1 : 0, risk_curves_out.c_str()));
      if (!loss_curves_out.empty())
        check(pc_loss_curves_to_csv(kp.get(), 1.0, cfg.alpha_max_loss, cfg.alpha_step, cfg.epsilon,
                                    cfg.normalize ? 1 : 0, loss_curves_out.c_str()));
    }
  } else if (attack_cmd->parsed()) {
    auto x = load(original, has_header);
    auto y = load(masked, has_header);
    check(pc_attack_report_to_csv(x.get(), y.get(), cfg.seed, output.c_str()));
  } else if (menu_cmd->parsed()) {
    pc_menu* menu = nullptr;
    check(pc_menu_load(menu_path.c_str(), &menu));
    MenuPtr mp(menu, &pc_menu_free);
    char* diags = nullptr;
    size_t hard = 0;
    check(pc_menu_check(mp.get(), &diags, &hard));
    if (diags && *diags) std::fputs(diags, stdout);
    pc_string_free(diags);
    if (hard > 0) return 1;
    std::puts("menu is coherent");
  }
  return 0;
}
