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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "qnc/phase.hpp"
#include "qnc/ring.hpp"

namespace qnc {

/// Identifies a quantum register inside a StateVector.
enum class RegisterId : std::int32_t {};

constexpr RegisterId reg(std::int32_t v) { return static_cast<RegisterId>(v); }
constexpr std::int32_t id_of(RegisterId r) { return static_cast<std::int32_t>(r); }

/// Draw the outcome from the Born distribution using `rng`.
struct Sampled {
  std::mt19937_64* rng = nullptr;
};
/// Post-select the given basis label.
struct Forced {
  std::uint64_t label = 0;
};
using MeasureMode = std::variant<Sampled, Forced>;

struct MeasurementOutcome {
  RegisterId reg{};
  RingVector outcome;
  int node = -1;             ///< filled in by the protocol layer
  double probability = 0.0;  ///< marginal probability of this outcome
};

inline constexpr std::size_t kDefaultMaxAmplitudes = std::size_t{1} << 24;

/// Dense pure state over registers of dimension |R|^q.
///
/// Basis states of one register are labelled by RingVector::label(); the
/// amplitude array is indexed in mixed radix with the first register most
/// significant. Measured registers are removed from the state.
class StateVector {
 public:
  using Amplitude = std::complex<double>;

  /// Normalizes the amplitudes if their norm differs from 1 by more than
  /// 1e-9 (see renormalized()). Throws StateError on a length mismatch or
  /// a zero vector.
  static StateVector from_amplitudes(RingPtr ring, std::size_t q, std::vector<RegisterId> regs,
                                     std::vector<Amplitude> amps,
                                     std::size_t max_amplitudes = kDefaultMaxAmplitudes);
  static StateVector basis(RingPtr ring, std::size_t q, std::vector<RegisterId> regs,
                           std::span<const std::uint64_t> labels,
                           std::size_t max_amplitudes = kDefaultMaxAmplitudes);

  const Ring& ring() const noexcept { return *ring_; }
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  std::size_t q() const noexcept { return q_; }
  std::uint64_t register_dim() const noexcept { return dim_; }
  std::span<const RegisterId> registers() const noexcept { return regs_; }
  std::size_t register_count() const noexcept { return regs_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  bool renormalized() const noexcept { return renormalized_; }
  std::size_t max_amplitudes() const noexcept { return max_amps_; }
  void set_max_amplitudes(std::size_t cap) { max_amps_ = cap; }

  bool has_register(RegisterId r) const;
  std::size_t position(RegisterId r) const;
  /// Amplitude of the basis state with the given per-register labels.
  Amplitude amplitude(std::span<const std::uint64_t> labels) const;
  double norm_squared() const;

  /// Appends registers in |0>. Throws StateError on id collisions and
  /// CapExceeded beyond max_amplitudes().
  void allocate(std::span<const RegisterId> fresh);

  /// |y_1..y_m>|z_1..z_n> -> |y_1..y_m>|z_1+f_1(y),..,z_n+f_n(y)> with
  /// f_i(y) = sum_j coeffs[i][j] y_j.
  void apply_linear_add(std::span<const RegisterId> in, std::span<const RegisterId> out,
                        const std::vector<std::vector<RingMatrix>>& coeffs);

  /// allocate(out) followed by apply_linear_add(in, out, coeffs).
  void apply_coding_unitary(std::span<const RegisterId> in, std::span<const RegisterId> out,
                            const std::vector<std::vector<RingMatrix>>& coeffs);

  /// Fourier transform over the additive group of R^q on one register
  /// (or its adjoint).
  void apply_fourier(RegisterId r, bool adjoint = false);

  /// Outcome probabilities of a computational-basis measurement.
  std::vector<double> marginal(RegisterId r) const;

  /// Collapses, drops the register and renormalizes the rest.
  MeasurementOutcome measure(RegisterId r, MeasureMode mode);

  /// Multiplies |x> on register r by exp(sign * 2 pi i phase_fn(x)).
  void apply_phase(RegisterId r, const std::function<Phase(std::uint64_t)>& phase_fn, int sign);

  void relabel(RegisterId from, RegisterId to);
  /// Permutes the tensor factors so that registers() == order.
  void reorder(std::span<const RegisterId> order);

 private:
  StateVector(RingPtr ring, std::size_t q, std::vector<RegisterId> regs, std::vector<Amplitude> amps,
              std::size_t max_amplitudes);

  std::uint64_t stride(std::size_t pos) const;

  RingPtr ring_;
  std::size_t q_ = 1;
  std::uint64_t dim_ = 1;
  std::vector<RegisterId> regs_;
  std::vector<Amplitude> amps_;
  std::size_t max_amps_ = kDefaultMaxAmplitudes;
  bool renormalized_ = false;
};

/// State over k registers with ids 0..k-1.
StateVector init_state(RingPtr ring, std::size_t q, std::size_t k,
                       std::vector<StateVector::Amplitude> amplitudes);

/// |<a|b>|^2. Throws StateError unless both states have the same registers
/// in the same order over the same ring and q.
double fidelity(const StateVector& a, const StateVector& b);

/// Equal-weight superposition over every basis label of registers 0..k-1.
StateVector uniform_state(RingPtr ring, std::size_t q, std::size_t k);

/// Input-state document: a JSON list of [label, re, im] where label lists
/// the ring coordinates of all k*q entries, register 0 first (nesting is
/// flattened). Missing labels have amplitude 0; repeated labels add.
StateVector parse_input_state(std::string_view json_text, RingPtr ring, std::size_t q,
                              std::size_t k, std::size_t max_amplitudes = kDefaultMaxAmplitudes);
StateVector load_input_state(const std::filesystem::path& path, RingPtr ring, std::size_t q,
                             std::size_t k, std::size_t max_amplitudes = kDefaultMaxAmplitudes);

}  // namespace qnc
