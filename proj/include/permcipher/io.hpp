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

#include <string>
#include <vector>

#include "permcipher/calibrate.hpp"
#include "permcipher/dataset.hpp"
#include "permcipher/metrics.hpp"
#include "permcipher/perm.hpp"

namespace permcipher {

/// Parses a rectangular numeric CSV. With a header, a column literally
/// named "id" supplies record ids; otherwise rows are numbered 1..n.
Dataset load_dataset(const std::string& path, bool has_header);
void save_dataset(const Dataset& d, const std::string& path);

/// Keys serialize as JSON {"n": n, "keys": [[one-line 1-based]...],
/// "names": [...]}; `as_matrix` adds a dense 0/1 "matrices" member
/// mirroring the permutation-matrix presentation.
void save_keys(const KeyGroup& keys, const std::string& path,
               const std::vector<std::string>& names = {}, bool as_matrix = false);
KeyGroup load_keys(const std::string& path, std::vector<std::string>* names = nullptr);

MenuSpec load_menu(const std::string& path);
void save_menu(const MenuSpec& menu, const std::string& path);

/// One curve with the attribute (or pair) label it belongs to.
struct LabeledCurve {
  std::string label;
  AversionCurve curve;
};

/// CSV columns: alpha,value,kind,attribute_or_pair. Values round-trip
/// bit-exactly (printed with max_digits10).
void save_curves(const std::vector<LabeledCurve>& curves, const std::string& path);
std::vector<LabeledCurve> load_curves(const std::string& path);

std::string report_to_json(const CalibrationReport& report);

}  // namespace permcipher
