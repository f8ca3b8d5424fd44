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

#include "qnc/ring.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qnc/error.hpp"

namespace qnc {
namespace detail {
std::vector<std::uint32_t> gf_poly_mod(std::vector<std::uint32_t> num,
                                       std::span<const std::uint32_t> den, std::uint32_t p);
}  // namespace detail

namespace {

std::uint32_t smallest_nontrivial_unit(std::uint32_t r) {
  for (std::uint32_t u = 2; u + 2 <= r; ++u) {
    if (std::gcd(u, r) == 1) return u;
  }
  return 1;
}

void apply_alternate_automorphism(std::span<std::uint32_t> c, std::span<const std::uint32_t> r) {
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (r[i + 1] % r[i] == 0) {
      c[i + 1] = static_cast<std::uint32_t>((c[i + 1] + std::uint64_t{r[i + 1] / r[i]} * c[i]) % r[i + 1]);
    } else if (r[i] % r[i + 1] == 0) {
      c[i] = static_cast<std::uint32_t>((c[i] + std::uint64_t{r[i] / r[i + 1]} * c[i + 1]) % r[i]);
    }
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = static_cast<std::uint32_t>(std::uint64_t{c[i]} * smallest_nontrivial_unit(r[i]) % r[i]);
  }
}

void require_same(const Ring& a, const Ring& b) {
  if (!a.same_as(b)) {
    throw RingMismatch("operands belong to different rings: " + a.spec().descriptor() + " vs " +
                       b.spec().descriptor());
  }
}

}  // namespace

RingPtr Ring::create(RingSpec spec, PhiChoice phi) {
  return RingPtr(new Ring(std::move(spec), phi));
}

RingPtr Ring::parse(std::string_view descriptor, PhiChoice phi) {
  return create(parse_ring_spec(descriptor), phi);
}

Ring::Ring(RingSpec spec, PhiChoice phi) : spec_(std::move(spec)), phi_choice_(phi) {
  if (spec_.cardinality > kMaxRingSize || spec_.moduli.empty()) {
    throw ParseError("unsupported ring size");
  }
  size_ = static_cast<std::uint32_t>(spec_.cardinality);
  const std::size_t ell = spec_.moduli.size();
  for (auto r : spec_.moduli) lcm_ = std::lcm(lcm_, r);

  std::vector<std::vector<std::uint32_t>> co(size_);
  for (std::uint32_t x = 0; x < size_; ++x) co[x] = coords(x);

  add_.resize(std::size_t{size_} * size_);
  mul_.resize(std::size_t{size_} * size_);
  neg_.resize(size_);
  std::vector<std::uint32_t> tmp(ell);
  for (std::uint32_t a = 0; a < size_; ++a) {
    for (std::size_t i = 0; i < ell; ++i) tmp[i] = (spec_.moduli[i] - co[a][i]) % spec_.moduli[i];
    neg_[a] = index_of(tmp);
    for (std::uint32_t b = 0; b < size_; ++b) {
      for (std::size_t i = 0; i < ell; ++i) tmp[i] = (co[a][i] + co[b][i]) % spec_.moduli[i];
      add_[a * size_ + b] = index_of(tmp);

      std::size_t off = 0;
      for (const auto& f : spec_.factors) {
        const std::uint32_t p = f.characteristic;
        if (f.kind == FactorKind::kModular) {
          tmp[off] = static_cast<std::uint32_t>(std::uint64_t{co[a][off]} * co[b][off] % p);
        } else {
          std::vector<std::uint32_t> prod(2 * f.degree - 1, 0);
          for (std::uint32_t i = 0; i < f.degree; ++i) {
            for (std::uint32_t j = 0; j < f.degree; ++j) {
              prod[i + j] = static_cast<std::uint32_t>(
                  (prod[i + j] + std::uint64_t{co[a][off + i]} * co[b][off + j]) % p);
            }
          }
          auto red = detail::gf_poly_mod(std::move(prod), f.polynomial, p);
          red.resize(f.degree, 0);
          for (std::uint32_t i = 0; i < f.degree; ++i) tmp[off + i] = red[i];
        }
        off += f.degree;
      }
      mul_[a * size_ + b] = index_of(tmp);
    }
  }

  std::fill(tmp.begin(), tmp.end(), 0);
  std::size_t off = 0;
  for (const auto& f : spec_.factors) {
    tmp[off] = 1;
    off += f.degree;
  }
  one_ = index_of(tmp);

  phi_.resize(std::size_t{size_} * ell);
  for (std::uint32_t x = 0; x < size_; ++x) {
    std::span<std::uint32_t> dst(phi_.data() + std::size_t{x} * ell, ell);
    std::copy(co[x].begin(), co[x].end(), dst.begin());
    if (phi == PhiChoice::kAlternate) apply_alternate_automorphism(dst, spec_.moduli);
  }

  chi_.resize(std::size_t{size_} * size_);
  for (std::uint32_t y = 0; y < size_; ++y) {
    const auto py = phi_coords(y);
    for (std::uint32_t z = 0; z < size_; ++z) {
      const auto pz = phi_coords(z);
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < ell; ++i) {
        acc += std::uint64_t{py[i]} * pz[i] % spec_.moduli[i] * (lcm_ / spec_.moduli[i]);
      }
      chi_[y * size_ + z] = static_cast<std::uint32_t>(acc % lcm_);
    }
  }
}

std::vector<std::uint32_t> Ring::coords(std::uint32_t index) const {
  const std::size_t ell = spec_.moduli.size();
  std::vector<std::uint32_t> c(ell);
  for (std::size_t i = ell; i-- > 0;) {
    c[i] = index % spec_.moduli[i];
    index /= spec_.moduli[i];
  }
  return c;
}

std::uint32_t Ring::index_of(std::span<const std::uint32_t> c) const {
  if (c.size() != spec_.moduli.size()) {
    throw RingMismatch("expected " + std::to_string(spec_.moduli.size()) + " coordinates, got " +
                       std::to_string(c.size()));
  }
  std::uint32_t idx = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= spec_.moduli[i]) {
      throw RingMismatch("coordinate " + std::to_string(c[i]) + " out of range for Z_" +
                         std::to_string(spec_.moduli[i]));
    }
    idx = idx * spec_.moduli[i] + c[i];
  }
  return idx;
}

RingElem Ring::zero() const { return RingElem(*this, 0); }
RingElem Ring::one() const { return RingElem(*this, one_); }
RingElem Ring::element(std::span<const std::uint32_t> c) const {
  return RingElem(*this, index_of(c));
}
RingElem Ring::element_at(std::uint32_t index) const { return RingElem(*this, index); }

Phase Ring::character(std::uint32_t y, std::uint32_t z) const {
  return Phase::fraction(character_numerator(y, z), lcm_);
}

std::span<const std::uint32_t> Ring::phi_coords(std::uint32_t index) const {
  const std::size_t ell = spec_.moduli.size();
  return {phi_.data() + std::size_t{index} * ell, ell};
}

bool Ring::same_as(const Ring& other) const noexcept {
  return this == &other || (phi_choice_ == other.phi_choice_ && spec_ == other.spec_);
}

RingElem::RingElem(const Ring& ring, std::uint32_t index) : ring_(&ring), index_(index) {
  if (index >= ring.size()) {
    throw RingMismatch("element index " + std::to_string(index) + " out of range");
  }
}

RingElem ring_add(const RingElem& a, const RingElem& b) {
  require_same(a.ring(), b.ring());
  return RingElem(a.ring(), a.ring().add(a.index(), b.index()));
}

RingElem ring_neg(const RingElem& a) { return RingElem(a.ring(), a.ring().neg(a.index())); }

RingElem ring_mul(const RingElem& a, const RingElem& b) {
  require_same(a.ring(), b.ring());
  return RingElem(a.ring(), a.ring().mul(a.index(), b.index()));
}

Phase character(const RingElem& y, const RingElem& z) {
  require_same(y.ring(), z.ring());
  return y.ring().character(y.index(), z.index());
}

// RingVector

RingVector::RingVector(const Ring& ring, std::vector<std::uint32_t> entries)
    : ring_(&ring), entries_(std::move(entries)) {
  for (auto e : entries_) {
    if (e >= ring.size()) throw RingMismatch("vector entry out of range");
  }
}

RingVector RingVector::zero(const Ring& ring, std::size_t q) {
  return RingVector(ring, std::vector<std::uint32_t>(q, 0));
}

RingVector RingVector::from_label(const Ring& ring, std::size_t q, std::uint64_t label) {
  std::vector<std::uint32_t> e(q);
  for (std::size_t i = q; i-- > 0;) {
    e[i] = static_cast<std::uint32_t>(label % ring.size());
    label /= ring.size();
  }
  if (label != 0) throw RingMismatch("basis label out of range");
  return RingVector(ring, std::move(e));
}

RingVector RingVector::from_elems(std::span<const RingElem> elems) {
  if (elems.empty()) throw RingMismatch("empty vector has no ring");
  std::vector<std::uint32_t> e;
  for (const auto& x : elems) {
    require_same(elems.front().ring(), x.ring());
    e.push_back(x.index());
  }
  return RingVector(elems.front().ring(), std::move(e));
}

std::uint64_t RingVector::label() const {
  std::uint64_t l = 0;
  for (auto e : entries_) l = l * ring_->size() + e;
  return l;
}

bool RingVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](std::uint32_t e) { return e == 0; });
}

std::vector<std::uint32_t> RingVector::flat_coords() const {
  std::vector<std::uint32_t> out;
  for (auto e : entries_) {
    const auto c = ring_->coords(e);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::string RingVector::str() const {
  const auto flat = flat_coords();
  if (flat.size() == 1) return std::to_string(flat.front());
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < flat.size(); ++i) os << (i ? "," : "") << flat[i];
  os << ")";
  return os.str();
}

RingVector operator+(const RingVector& a, const RingVector& b) {
  require_same(*a.ring_, *b.ring_);
  if (a.size() != b.size()) throw RingMismatch("vector length mismatch");
  std::vector<std::uint32_t> e(a.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.ring_->add(a.entries_[i], b.entries_[i]);
  return RingVector(*a.ring_, std::move(e));
}

bool operator==(const RingVector& a, const RingVector& b) {
  return a.ring_->same_as(*b.ring_) && a.entries_ == b.entries_;
}

Phase vector_character(const RingVector& y, const RingVector& z) {
  require_same(y.ring(), z.ring());
  if (y.size() != z.size()) throw RingMismatch("vector length mismatch");
  const Ring& r = y.ring();
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    acc += r.character_numerator(y.entries()[i], z.entries()[i]);
  }
  return Phase::fraction(static_cast<std::int64_t>(acc % r.phase_denominator()),
                         r.phase_denominator());
}

// RingMatrix

RingMatrix::RingMatrix(const Ring& ring, std::size_t q, std::vector<std::uint32_t> entries)
    : ring_(&ring), q_(q), entries_(std::move(entries)) {
  if (entries_.size() != q * q) throw RingMismatch("matrix needs q*q entries");
  for (auto e : entries_) {
    if (e >= ring.size()) throw RingMismatch("matrix entry out of range");
  }
}

RingMatrix RingMatrix::identity(const Ring& ring, std::size_t q) {
  std::vector<std::uint32_t> e(q * q, 0);
  for (std::size_t i = 0; i < q; ++i) e[i * q + i] = ring.one_index();
  return RingMatrix(ring, q, std::move(e));
}

RingMatrix RingMatrix::zero(const Ring& ring, std::size_t q) {
  return RingMatrix(ring, q, std::vector<std::uint32_t>(q * q, 0));
}

bool RingMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](std::uint32_t e) { return e == 0; });
}

bool RingMatrix::is_identity() const { return *this == identity(*ring_, q_); }

std::string RingMatrix::str() const {
  std::ostringstream os;
  auto elem = [&](std::uint32_t e) {
    const auto c = ring_->coords(e);
    if (c.size() == 1) {
      os << c.front();
    } else {
      os << "(";
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
      os << ")";
    }
  };
  if (q_ == 1) {
    elem(entries_.front());
    return os.str();
  }
  os << "[";
  for (std::size_t r = 0; r < q_; ++r) {
    os << (r ? ";" : "");
    for (std::size_t c = 0; c < q_; ++c) {
      if (c) os << " ";
      elem(entries_[r * q_ + c]);
    }
  }
  os << "]";
  return os.str();
}

RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
  require_same(*a.ring_, *b.ring_);
  if (a.q_ != b.q_) throw RingMismatch("matrix dimension mismatch");
  const Ring& r = *a.ring_;
  const std::size_t q = a.q_;
  std::vector<std::uint32_t> e(q * q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) {
      std::uint32_t acc = 0;
      for (std::size_t l = 0; l < q; ++l) {
        acc = r.add(acc, r.mul(a.entries_[i * q + l], b.entries_[l * q + j]));
      }
      e[i * q + j] = acc;
    }
  }
  return RingMatrix(r, q, std::move(e));
}

RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
  require_same(*a.ring_, *b.ring_);
  if (a.q_ != b.q_) throw RingMismatch("matrix dimension mismatch");
  std::vector<std::uint32_t> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = a.ring_->add(a.entries_[i], b.entries_[i]);
  return RingMatrix(*a.ring_, a.q_, std::move(e));
}

bool operator==(const RingMatrix& a, const RingMatrix& b) {
  return a.ring_->same_as(*b.ring_) && a.q_ == b.q_ && a.entries_ == b.entries_;
}

RingVector mat_vec(const RingMatrix& b, const RingVector& v) {
  require_same(b.ring(), v.ring());
  if (b.dim() != v.size()) {
    throw RingMismatch("matrix is " + std::to_string(b.dim()) + "x" + std::to_string(b.dim()) +
                       " but vector has length " + std::to_string(v.size()));
  }
  const Ring& r = b.ring();
  const std::size_t q = b.dim();
  std::vector<std::uint32_t> out(q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    std::uint32_t acc = 0;
    for (std::size_t j = 0; j < q; ++j) acc = r.add(acc, r.mul(b.entries()[i * q + j], v.entries()[j]));
    out[i] = acc;
  }
  return RingVector(r, std::move(out));
}

}  // namespace qnc
