// Copyright 2026 The qnetcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qnc {

/// Malformed descriptor, instance document or input-state file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A structurally well-formed instance that violates a model rule
/// (cycle, shape mismatch, fan-in 0 non-source, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands from different rings, or vectors/matrices of different length.
class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive loop or amplitude array would exceed a configured limit.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::string override_hint)
      : std::runtime_error(what), hint_(std::move(override_hint)) {}

  /// Name of the option that raises the limit.
  const std::string& override_hint() const noexcept { return hint_; }

 private:
  std::string hint_;
};

/// The classical coding scheme does not solve its k-pair instance.
class SchemeInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Register bookkeeping violations and impossible forced outcomes.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A forced measurement outcome that cannot occur.
class ZeroProbabilityOutcome : public StateError {
 public:
  using StateError::StateError;
};

}  // namespace qnc
