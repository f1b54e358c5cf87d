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

#include "permcipher/error.hpp"

namespace permcipher {

/// n records by p numeric attributes with stable record identifiers.
/// Columns are stored attribute-major.
struct Dataset {
  std::vector<std::string> record_ids;
  std::vector<std::string> column_names;
  std::vector<std::vector<double>> columns;

  std::size_t n() const { return record_ids.size(); }
  std::size_t p() const { return columns.size(); }

  /// Throws unless all columns have length n, record ids are unique,
  /// n >= 2, p >= 1 and every value is finite.
  void validate() const;

  /// Convenience constructor with ids "1".."n" and names "a1".."ap".
  static Dataset from_columns(std::vector<std::vector<double>> cols);

  bool operator==(const Dataset& other) const = default;
};

}  // namespace permcipher
