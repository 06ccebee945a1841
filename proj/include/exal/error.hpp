/*
 * Copyright 2026 The ExAL Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace exal {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-facing configuration (bad hyperparameter, unknown label, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A caller broke an interface precondition (dimension or shape mismatch).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Input data could not be found, read or decoded.
class DataError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind { kBadMagic, kTruncated, kCountMismatch, kMalformed };

class ParseError : public DataError {
 public:
  ParseError(ParseErrorKind kind, const std::string& what) : DataError(what), kind_(kind) {}
  ParseErrorKind kind() const noexcept { return kind_; }

 private:
  ParseErrorKind kind_;
};

}  // namespace exal
