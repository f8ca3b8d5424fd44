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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnc/phase.hpp"

namespace qnc {

enum class FactorKind { kModular, kGalois };

/// One direct factor of a ring: Z_m, or GF(p^k) = Z_p[t]/(poly).
struct RingFactor {
  FactorKind kind = FactorKind::kModular;
  std::uint32_t characteristic = 2;  ///< m for Z_m, p for GF(p^k)
  std::uint32_t degree = 1;          ///< k (1 for Z_m)
  /// GF only: monic irreducible polynomial, coefficients low-to-high,
  /// size degree + 1.
  std::vector<std::uint32_t> polynomial;

  std::uint32_t size() const;
  friend bool operator==(const RingFactor&, const RingFactor&) = default;
};

/// A finite ring together with the additive coordinates phi: R -> Z_r1 x ... x Z_rl.
///
/// Coordinates are concatenated factor by factor: Z_m contributes one
/// coordinate mod m, GF(p^k) contributes the k coefficients of the basis
/// 1, t, ..., t^(k-1), each mod p.
struct RingSpec {
  std::vector<RingFactor> factors;
  std::vector<std::uint32_t> moduli;
  std::uint64_t cardinality = 1;

  /// Canonical descriptor; parse_ring_spec(descriptor()) == *this.
  std::string descriptor() const;
  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// Largest |R| for which tables are built.
inline constexpr std::uint32_t kMaxRingSize = 1024;

/// Parses `Z(m)`, `GF(q)`, `GF(p^k)`, `GF(p^k)[c0,c1,...,ck]`, joined with `x`.
/// Throws ParseError.
RingSpec parse_ring_spec(std::string_view text);

/// Computes the coordinate moduli and cardinality, validating every factor.
RingSpec make_ring_spec(std::vector<RingFactor> factors);

/// Polynomial over Z_p (coefficients low-to-high, top coefficient nonzero)
/// has no monic factor of degree 1..deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

/// Least monic irreducible polynomial of degree k over Z_p, comparing
/// coefficients from the top degree down.
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t k);

bool is_prime(std::uint64_t n);

/// Which additive isomorphism feeds the character pairing.
///
/// kAlternate composes the canonical coordinates with a fixed automorphism
/// of Z_r1 x ... x Z_rl: a shear between adjacent coordinates whose moduli
/// divide one another, then scaling each coordinate by its smallest unit
/// in [2, r-2] (when one exists). For Z_2, Z_3 and Z_4 it coincides with
/// the canonical choice, since their automorphism groups act trivially on
/// the pairing.
enum class PhiChoice { kCanonical, kAlternate };

class Ring;
class RingElem;
using RingPtr = std::shared_ptr<const Ring>;

/// Immutable finite ring with precomputed addition, multiplication and
/// character tables. Elements are addressed by an index in [0, size()):
/// the mixed-radix encoding of their coordinates, first coordinate most
/// significant.
class Ring {
 public:
  static RingPtr create(RingSpec spec, PhiChoice phi = PhiChoice::kCanonical);
  static RingPtr parse(std::string_view descriptor, PhiChoice phi = PhiChoice::kCanonical);

  const RingSpec& spec() const noexcept { return spec_; }
  PhiChoice phi() const noexcept { return phi_choice_; }
  std::uint32_t size() const noexcept { return size_; }
  std::size_t coord_count() const noexcept { return spec_.moduli.size(); }
  std::span<const std::uint32_t> moduli() const noexcept { return spec_.moduli; }
  /// lcm of the moduli: every character value has a denominator dividing it.
  std::uint32_t phase_denominator() const noexcept { return lcm_; }

  RingElem zero() const;
  RingElem one() const;
  RingElem element(std::span<const std::uint32_t> coords) const;
  RingElem element_at(std::uint32_t index) const;

  std::vector<std::uint32_t> coords(std::uint32_t index) const;
  std::uint32_t index_of(std::span<const std::uint32_t> coords) const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * size_ + b]; }
  std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * size_ + b]; }
  std::uint32_t one_index() const noexcept { return one_; }

  /// sum_i phi_i(y) phi_i(z) / r_i mod 1, as a numerator over phase_denominator().
  std::uint32_t character_numerator(std::uint32_t y, std::uint32_t z) const {
    return chi_[y * size_ + z];
  }
  Phase character(std::uint32_t y, std::uint32_t z) const;

  /// phi(x) under this ring's PhiChoice.
  std::span<const std::uint32_t> phi_coords(std::uint32_t index) const;

  /// Same ring and same phi; RingMismatch is thrown across rings that differ.
  bool same_as(const Ring& other) const noexcept;

 private:
  Ring(RingSpec spec, PhiChoice phi);

  RingSpec spec_;
  PhiChoice phi_choice_;
  std::uint32_t size_ = 0;
  std::uint32_t lcm_ = 1;
  std::uint32_t one_ = 0;
  std::vector<std::uint32_t> add_;
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> chi_;
  std::vector<std::uint32_t> phi_;  // size_ * coord_count()
};

/// A ring element. Holds a non-owning pointer to its ring; the ring must
/// outlive the element.
class RingElem {
 public:
  RingElem(const Ring& ring, std::uint32_t index);

  const Ring& ring() const noexcept { return *ring_; }
  std::uint32_t index() const noexcept { return index_; }
  std::vector<std::uint32_t> coords() const { return ring_->coords(index_); }
  bool is_zero() const noexcept { return index_ == 0; }

  friend bool operator==(const RingElem& a, const RingElem& b) {
    return a.ring_->same_as(*b.ring_) && a.index_ == b.index_;
  }

 private:
  const Ring* ring_;
  std::uint32_t index_;
};

RingElem ring_add(const RingElem& a, const RingElem& b);
RingElem ring_neg(const RingElem& a);
RingElem ring_mul(const RingElem& a, const RingElem& b);
inline RingElem operator+(const RingElem& a, const RingElem& b) { return ring_add(a, b); }
inline RingElem operator-(const RingElem& a) { return ring_neg(a); }
inline RingElem operator*(const RingElem& a, const RingElem& b) { return ring_mul(a, b); }

Phase character(const RingElem& y, const RingElem& z);

/// Element of R^q.
class RingVector {
 public:
  RingVector(const Ring& ring, std::vector<std::uint32_t> entries);
  static RingVector zero(const Ring& ring, std::size_t q);
  /// Inverse of label(): entry 0 is the most significant base-|R| digit.
  static RingVector from_label(const Ring& ring, std::size_t q, std::uint64_t label);
  static RingVector from_elems(std::span<const RingElem> elems);

  const Ring& ring() const noexcept { return *ring_; }
  std::size_t size() const noexcept { return entries_.size(); }
  RingElem operator[](std::size_t i) const { return RingElem(*ring_, entries_[i]); }
  std::span<const std::uint32_t> entries() const noexcept { return entries_; }
  std::uint64_t label() const;
  bool is_zero() const;

  /// All coordinates of all entries, entry by entry.
  std::vector<std::uint32_t> flat_coords() const;
  /// "(c,c,...)" for q = 1 and coordinate count 1 a bare integer.
  std::string str() const;

  friend RingVector operator+(const RingVector& a, const RingVector& b);
  friend bool operator==(const RingVector& a, const RingVector& b);

 private:
  const Ring* ring_;
  std::vector<std::uint32_t> entries_;
};

/// sum_i psi_i(y) . psi_i(z) / r_i mod 1.
Phase vector_character(const RingVector& y, const RingVector& z);

/// q x q matrix over R, row-major.
class RingMatrix {
 public:
  RingMatrix(const Ring& ring, std::size_t q, std::vector<std::uint32_t> entries);
  static RingMatrix identity(const Ring& ring, std::size_t q);
  static RingMatrix zero(const Ring& ring, std::size_t q);

  const Ring& ring() const noexcept { return *ring_; }
  std::size_t dim() const noexcept { return q_; }
  RingElem at(std::size_t row, std::size_t col) const {
    return RingElem(*ring_, entries_[row * q_ + col]);
  }
  std::span<const std::uint32_t> entries() const noexcept { return entries_; }
  bool is_zero() const;
  bool is_identity() const;
  std::string str() const;

  friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b);
  friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b);
  friend bool operator==(const RingMatrix& a, const RingMatrix& b);

 private:
  const Ring* ring_;
  std::size_t q_;
  std::vector<std::uint32_t> entries_;
};

/// B v with left multiplication: (Bv)_r = sum_c B_rc v_c.
RingVector mat_vec(const RingMatrix& b, const RingVector& v);

}  // namespace qnc
