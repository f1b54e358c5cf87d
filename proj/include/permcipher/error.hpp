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

#include <stdexcept>
#include <string>

namespace permcipher {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// n < 2, or an otherwise unusable size.
class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

/// Mismatched lengths, shapes or key counts.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Non-finite or otherwise unusable numeric input.
class InvalidDataError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized artifact (key file, menu file, curve file).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// CSV / JSON syntax problems.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Value outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Alpha outside the admissible range for a curve kind.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Bad method parameter (window, noise ratio, multiplier range).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input degenerate for the requested operation (e.g. zero variance).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace permcipher
