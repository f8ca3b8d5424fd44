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

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace qnc {

/// An exact rational number reduced modulo 1, i.e. a point of Q/Z.
///
/// Stored as num/den in lowest terms with 0 <= num < den. The phase factor
/// it stands for is exp(2*pi*i*num/den); conversion to floating point only
/// happens in `radians()`.
class Phase {
 public:
  constexpr Phase() = default;

  /// num/den mod 1. `den` must be positive.
  static Phase fraction(std::int64_t num, std::int64_t den);

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }

  Phase operator+(const Phase& other) const;
  Phase operator-(const Phase& other) const;
  Phase operator-() const;
  Phase& operator+=(const Phase& other) { return *this = *this + other; }
  Phase& operator-=(const Phase& other) { return *this = *this - other; }

  /// Integer multiple of the phase, reduced mod 1.
  Phase times(std::int64_t k) const;

  double radians() const noexcept;

  /// "0" or "num/den".
  std::string str() const;

  friend bool operator==(const Phase&, const Phase&) = default;

 private:
  constexpr Phase(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {}

  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Phase& p);

}  // namespace qnc
