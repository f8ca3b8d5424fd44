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

#include "qnc/phase.hpp"

#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace qnc {

Phase Phase::fraction(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("phase denominator must be positive");
  std::int64_t r = num % den;
  if (r < 0) r += den;
  const std::int64_t g = std::gcd(r, den);
  return Phase(static_cast<std::uint64_t>(r / g), static_cast<std::uint64_t>(den / g));
}

Phase Phase::operator+(const Phase& other) const {
  const std::uint64_t l = std::lcm(den_, other.den_);
  const std::uint64_t n = num_ * (l / den_) + other.num_ * (l / other.den_);
  return fraction(static_cast<std::int64_t>(n % l), static_cast<std::int64_t>(l));
}

Phase Phase::operator-() const {
  if (num_ == 0) return *this;
  return Phase(den_ - num_, den_);
}

Phase Phase::operator-(const Phase& other) const { return *this + (-other); }

Phase Phase::times(std::int64_t k) const {
  const auto den = static_cast<std::int64_t>(den_);
  std::int64_t kk = k % den;
  if (kk < 0) kk += den;
  // shift-and-add keeps every partial sum below 2 * den_
  std::uint64_t a = num_, b = static_cast<std::uint64_t>(kk), n = 0;
  while (b != 0) {
    if (b & 1) n = (n + a) % den_;
    a = (a + a) % den_;
    b >>= 1;
  }
  return fraction(static_cast<std::int64_t>(n), den);
}

double Phase::radians() const noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Phase::str() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Phase& p) { return os << p.str(); }

}  // namespace qnc
