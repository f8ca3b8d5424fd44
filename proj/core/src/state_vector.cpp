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

#include "qnc/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qnc/error.hpp"

namespace qnc {
namespace {

constexpr double kNormTolerance = 1e-9;
constexpr double kZeroProbability = 1e-14;

std::string name(RegisterId r) { return "register " + std::to_string(id_of(r)); }

// Digit-wise arithmetic on register labels (base-|R| digits, q of them).
class LabelArith {
 public:
  LabelArith(const Ring& ring, std::size_t q) : ring_(ring), q_(q) {}

  std::vector<std::uint32_t> digits(std::uint64_t label) const {
    std::vector<std::uint32_t> d(q_);
    for (std::size_t i = q_; i-- > 0;) {
      d[i] = static_cast<std::uint32_t>(label % ring_.size());
      label /= ring_.size();
    }
    return d;
  }

  std::uint64_t label(std::span<const std::uint32_t> d) const {
    std::uint64_t l = 0;
    for (auto x : d) l = l * ring_.size() + x;
    return l;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    auto da = digits(a);
    const auto db = digits(b);
    for (std::size_t i = 0; i < q_; ++i) da[i] = ring_.add(da[i], db[i]);
    return label(da);
  }

  std::uint64_t mat_vec(const RingMatrix& m, std::uint64_t v) const {
    const auto dv = digits(v);
    std::vector<std::uint32_t> out(q_, 0);
    for (std::size_t r = 0; r < q_; ++r) {
      std::uint32_t acc = 0;
      for (std::size_t c = 0; c < q_; ++c) acc = ring_.add(acc, ring_.mul(m.entries()[r * q_ + c], dv[c]));
      out[r] = acc;
    }
    return label(out);
  }

  /// Numerator of vector_character over ring_.phase_denominator().
  std::uint64_t character(std::uint64_t y, std::uint64_t z) const {
    const auto dy = digits(y);
    const auto dz = digits(z);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < q_; ++i) acc += ring_.character_numerator(dy[i], dz[i]);
    return acc % ring_.phase_denominator();
  }

 private:
  const Ring& ring_;
  std::size_t q_;
};

}  // namespace

StateVector::StateVector(RingPtr ring, std::size_t q, std::vector<RegisterId> regs,
                         std::vector<Amplitude> amps, std::size_t max_amplitudes)
    : ring_(std::move(ring)), q_(q), regs_(std::move(regs)), amps_(std::move(amps)),
      max_amps_(max_amplitudes) {
  if (!ring_) throw std::invalid_argument("state needs a ring");
  if (q_ == 0) throw StateError("q must be positive");
  for (std::size_t i = 0; i < q_; ++i) dim_ *= ring_->size();
  auto sorted = regs_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw StateError("duplicate register id");
  }
  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < regs_.size(); ++i) {
    if (expected > max_amps_ / dim_) {
      throw CapExceeded("state over " + std::to_string(regs_.size()) +
                            " registers exceeds the amplitude cap of " + std::to_string(max_amps_),
                        "--max-dim");
    }
    expected *= dim_;
  }
  if (amps_.size() != expected) {
    throw StateError("expected " + std::to_string(expected) + " amplitudes, got " +
                     std::to_string(amps_.size()));
  }
  const double n2 = norm_squared();
  if (n2 == 0.0) throw StateError("zero vector is not a state");
  if (std::abs(n2 - 1.0) > kNormTolerance) {
    const double s = 1.0 / std::sqrt(n2);
    for (auto& a : amps_) a *= s;
    renormalized_ = true;
  }
}

StateVector StateVector::from_amplitudes(RingPtr ring, std::size_t q, std::vector<RegisterId> regs,
                                         std::vector<Amplitude> amps, std::size_t max_amplitudes) {
  return StateVector(std::move(ring), q, std::move(regs), std::move(amps), max_amplitudes);
}

StateVector StateVector::basis(RingPtr ring, std::size_t q, std::vector<RegisterId> regs,
                               std::span<const std::uint64_t> labels, std::size_t max_amplitudes) {
  if (labels.size() != regs.size()) throw StateError("one label per register required");
  std::uint64_t d = 1;
  for (std::size_t i = 0; i < q; ++i) d *= ring->size();
  std::uint64_t total = 1;
  std::uint64_t index = 0;
  for (auto l : labels) {
    if (l >= d) throw StateError("basis label " + std::to_string(l) + " out of range");
    if (total > max_amplitudes / d) {
      throw CapExceeded("basis state exceeds the amplitude cap", "--max-dim");
    }
    total *= d;
    index = index * d + l;
  }
  std::vector<Amplitude> amps(total);
  amps[index] = 1.0;
  return StateVector(std::move(ring), q, std::move(regs), std::move(amps), max_amplitudes);
}

bool StateVector::has_register(RegisterId r) const {
  return std::find(regs_.begin(), regs_.end(), r) != regs_.end();
}

std::size_t StateVector::position(RegisterId r) const {
  auto it = std::find(regs_.begin(), regs_.end(), r);
  if (it == regs_.end()) throw StateError("unknown " + name(r));
  return static_cast<std::size_t>(it - regs_.begin());
}

std::uint64_t StateVector::stride(std::size_t pos) const {
  std::uint64_t s = 1;
  for (std::size_t i = pos + 1; i < regs_.size(); ++i) s *= dim_;
  return s;
}

StateVector::Amplitude StateVector::amplitude(std::span<const std::uint64_t> labels) const {
  if (labels.size() != regs_.size()) throw StateError("one label per register required");
  std::uint64_t idx = 0;
  for (auto l : labels) {
    if (l >= dim_) throw StateError("basis label out of range");
    idx = idx * dim_ + l;
  }
  return amps_[idx];
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

void StateVector::allocate(std::span<const RegisterId> fresh) {
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    if (has_register(fresh[i]) ||
        std::find(fresh.begin(), fresh.begin() + static_cast<std::ptrdiff_t>(i), fresh[i]) !=
            fresh.begin() + static_cast<std::ptrdiff_t>(i)) {
      throw StateError("register id collision on " + name(fresh[i]));
    }
  }
  std::uint64_t grow = 1;
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    if (grow > max_amps_ / dim_) {
      throw CapExceeded("allocating " + std::to_string(fresh.size()) +
                            " registers exceeds the amplitude cap of " + std::to_string(max_amps_),
                        "--max-dim");
    }
    grow *= dim_;
  }
  if (amps_.size() > max_amps_ / grow) {
    throw CapExceeded("state would hold " + std::to_string(amps_.size()) + " x " +
                          std::to_string(grow) + " amplitudes, above the cap of " +
                          std::to_string(max_amps_),
                      "--max-dim");
  }
  std::vector<Amplitude> next(amps_.size() * grow);
  for (std::size_t i = 0; i < amps_.size(); ++i) next[i * grow] = amps_[i];
  amps_ = std::move(next);
  regs_.insert(regs_.end(), fresh.begin(), fresh.end());
}

void StateVector::apply_linear_add(std::span<const RegisterId> in, std::span<const RegisterId> out,
                                   const std::vector<std::vector<RingMatrix>>& coeffs) {
  if (coeffs.size() != out.size()) throw StateError("need one coefficient row per output register");
  for (const auto& row : coeffs) {
    if (row.size() != in.size()) throw StateError("coefficient row length differs from fan-in");
    for (const auto& m : row) {
      if (!m.ring().same_as(*ring_) || m.dim() != q_) {
        throw RingMismatch("coefficient does not match the state's ring and q");
      }
    }
  }
  std::vector<std::size_t> in_pos, out_pos;
  for (auto r : in) in_pos.push_back(position(r));
  for (auto r : out) {
    out_pos.push_back(position(r));
    if (std::find(in.begin(), in.end(), r) != in.end()) {
      throw StateError(name(r) + " is both input and output");
    }
  }

  const LabelArith arith(*ring_, q_);
  // table[i][j][y] = label of coeffs[i][j] * y
  std::vector<std::vector<std::vector<std::uint64_t>>> table(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    table[i].resize(in.size());
    for (std::size_t j = 0; j < in.size(); ++j) {
      table[i][j].resize(dim_);
      for (std::uint64_t y = 0; y < dim_; ++y) table[i][j][y] = arith.mat_vec(coeffs[i][j], y);
    }
  }
  const bool tabulate = dim_ <= 256;
  std::vector<std::uint64_t> sum(tabulate ? dim_ * dim_ : 0);
  for (std::uint64_t a = 0; tabulate && a < dim_; ++a) {
    for (std::uint64_t b = 0; b < dim_; ++b) sum[a * dim_ + b] = arith.add(a, b);
  }
  auto add = [&](std::uint64_t a, std::uint64_t b) {
    return tabulate ? sum[a * dim_ + b] : arith.add(a, b);
  };
  std::vector<std::uint64_t> strides(regs_.size());
  for (std::size_t p = 0; p < regs_.size(); ++p) strides[p] = stride(p);

  std::vector<Amplitude> next(amps_.size());
  for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) {
    std::uint64_t target = idx;
    for (std::size_t i = 0; i < out.size(); ++i) {
      std::uint64_t f = 0;
      for (std::size_t j = 0; j < in.size(); ++j) {
        const std::uint64_t y = idx / strides[in_pos[j]] % dim_;
        f = add(f, table[i][j][y]);
      }
      const std::uint64_t z = idx / strides[out_pos[i]] % dim_;
      const std::uint64_t nz = add(z, f);
      target = target - z * strides[out_pos[i]] + nz * strides[out_pos[i]];
    }
    next[target] = amps_[idx];
  }
  amps_ = std::move(next);
}

void StateVector::apply_coding_unitary(std::span<const RegisterId> in,
                                       std::span<const RegisterId> out,
                                       const std::vector<std::vector<RingMatrix>>& coeffs) {
  for (auto r : in) position(r);
  if (coeffs.size() != out.size()) throw StateError("need one coefficient row per output register");
  allocate(out);
  apply_linear_add(in, out, coeffs);
}

void StateVector::apply_fourier(RegisterId r, bool adjoint) {
  const std::size_t pos = position(r);
  const LabelArith arith(*ring_, q_);
  const std::uint64_t den = ring_->phase_denominator();
  std::vector<Amplitude> roots(den);
  for (std::uint64_t k = 0; k < den; ++k) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(den);
    roots[k] = std::polar(1.0, adjoint ? -angle : angle);
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim_));
  // The character pairing is symmetric, so W is a symmetric matrix.
  std::vector<Amplitude> w(dim_ * dim_);
  for (std::uint64_t y = 0; y < dim_; ++y) {
    for (std::uint64_t z = 0; z < dim_; ++z) w[y * dim_ + z] = roots[arith.character(y, z)] * scale;
  }
  const std::uint64_t inner = stride(pos);
  const std::uint64_t block = inner * dim_;
  std::vector<Amplitude> in(dim_), out(dim_);
  for (std::uint64_t base = 0; base < amps_.size(); base += block) {
    for (std::uint64_t off = 0; off < inner; ++off) {
      for (std::uint64_t y = 0; y < dim_; ++y) in[y] = amps_[base + y * inner + off];
      for (std::uint64_t z = 0; z < dim_; ++z) {
        Amplitude acc = 0.0;
        for (std::uint64_t y = 0; y < dim_; ++y) acc += w[y * dim_ + z] * in[y];
        out[z] = acc;
      }
      for (std::uint64_t z = 0; z < dim_; ++z) amps_[base + z * inner + off] = out[z];
    }
  }
}

std::vector<double> StateVector::marginal(RegisterId r) const {
  const std::size_t pos = position(r);
  const std::uint64_t inner = stride(pos);
  std::vector<double> p(dim_, 0.0);
  for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) p[idx / inner % dim_] += std::norm(amps_[idx]);
  const double total = norm_squared();
  for (auto& x : p) x /= total;
  return p;
}

MeasurementOutcome StateVector::measure(RegisterId r, MeasureMode mode) {
  const std::size_t pos = position(r);
  const auto probs = marginal(r);
  std::uint64_t outcome = 0;
  if (const auto* forced = std::get_if<Forced>(&mode)) {
    outcome = forced->label;
    if (outcome >= dim_) throw StateError("forced outcome label out of range for " + name(r));
    if (probs[outcome] < kZeroProbability) {
      throw ZeroProbabilityOutcome("forced outcome " + RingVector::from_label(*ring_, q_, outcome).str() +
                       " on " + name(r) + " has zero probability");
    }
  } else {
    auto* rng = std::get<Sampled>(mode).rng;
    if (rng == nullptr) throw std::invalid_argument("sampled measurement needs an rng");
    // 53 random bits; std::uniform_real_distribution is not portable across libraries.
    const double u = static_cast<double>((*rng)() >> 11) * 0x1.0p-53;
    double cum = 0.0;
    outcome = dim_;
    for (std::uint64_t i = 0; i < dim_; ++i) {
      if (probs[i] < kZeroProbability) continue;
      cum += probs[i];
      outcome = i;
      if (u < cum) break;
    }
  }

  const std::uint64_t inner = stride(pos);
  const std::uint64_t block = inner * dim_;
  const double scale = 1.0 / std::sqrt(probs[outcome] * norm_squared());
  std::vector<Amplitude> next(amps_.size() / dim_);
  for (std::uint64_t outer = 0; outer < amps_.size() / block; ++outer) {
    for (std::uint64_t off = 0; off < inner; ++off) {
      next[outer * inner + off] = amps_[outer * block + outcome * inner + off] * scale;
    }
  }
  amps_ = std::move(next);
  regs_.erase(regs_.begin() + static_cast<std::ptrdiff_t>(pos));
  return MeasurementOutcome{r, RingVector::from_label(*ring_, q_, outcome), -1, probs[outcome]};
}

void StateVector::apply_phase(RegisterId r, const std::function<Phase(std::uint64_t)>& phase_fn,
                              int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("phase sign must be +1 or -1");
  const std::size_t pos = position(r);
  std::vector<Amplitude> factor(dim_);
  for (std::uint64_t x = 0; x < dim_; ++x) {
    factor[x] = std::polar(1.0, sign * phase_fn(x).radians());
  }
  const std::uint64_t inner = stride(pos);
  for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) amps_[idx] *= factor[idx / inner % dim_];
}

void StateVector::relabel(RegisterId from, RegisterId to) {
  const std::size_t pos = position(from);
  if (from != to && has_register(to)) throw StateError("register id collision on " + name(to));
  regs_[pos] = to;
}

void StateVector::reorder(std::span<const RegisterId> order) {
  if (order.size() != regs_.size()) throw StateError("reorder needs every register exactly once");
  std::vector<std::size_t> src_pos;
  for (auto r : order) src_pos.push_back(position(r));
  auto check = src_pos;
  std::sort(check.begin(), check.end());
  if (std::adjacent_find(check.begin(), check.end()) != check.end()) {
    throw StateError("reorder needs every register exactly once");
  }
  const std::size_t n = regs_.size();
  std::vector<std::uint64_t> old_strides(n);
  for (std::size_t p = 0; p < n; ++p) old_strides[p] = stride(p);
  std::vector<Amplitude> next(amps_.size());
  for (std::uint64_t idx = 0; idx < amps_.size(); ++idx) {
    // idx is in the new layout; digit p belongs to register order[p].
    std::uint64_t rest = idx;
    std::uint64_t old = 0;
    for (std::size_t p = n; p-- > 0;) {
      old += (rest % dim_) * old_strides[src_pos[p]];
      rest /= dim_;
    }
    next[idx] = amps_[old];
  }
  amps_ = std::move(next);
  regs_.assign(order.begin(), order.end());
}

StateVector init_state(RingPtr ring, std::size_t q, std::size_t k,
                       std::vector<StateVector::Amplitude> amplitudes) {
  std::vector<RegisterId> regs;
  for (std::size_t i = 0; i < k; ++i) regs.push_back(reg(static_cast<std::int32_t>(i)));
  return StateVector::from_amplitudes(std::move(ring), q, std::move(regs), std::move(amplitudes));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (!a.ring().same_as(b.ring()) || a.q() != b.q() ||
      !std::equal(a.registers().begin(), a.registers().end(), b.registers().begin(),
                  b.registers().end())) {
    throw StateError("fidelity needs the same register roster and ordering");
  }
  StateVector::Amplitude overlap = 0.0;
  const auto aa = a.amplitudes();
  const auto bb = b.amplitudes();
  for (std::size_t i = 0; i < aa.size(); ++i) overlap += std::conj(aa[i]) * bb[i];
  return std::min(1.0, std::norm(overlap));
}

}  // namespace qnc
