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

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qnc/network.hpp"
#include "qnc/phase.hpp"
#include "qnc/state_vector.hpp"

namespace qnc {

/// Who receives a node's measurement outcomes.
enum class RecipientPolicy {
  kBroadcast,  ///< every one of the k targets
  kPrune,      ///< targets t_j with gamma_{i,j} != 0 for some measured input i, minus the node itself
};

struct ProtocolOptions {
  RecipientPolicy policy = RecipientPolicy::kBroadcast;
  /// Copy nodes (fan-in 1, identity outputs) forward their input register
  /// along the first outgoing edge instead of measuring it.
  bool copy_skip = false;
  bool skip_classical_check = false;
  std::size_t max_amplitudes = kDefaultMaxAmplitudes;
  std::uint64_t verify_cap = kDefaultVerifyCap;
  /// Node processing order; empty means Network::topological_order().
  std::vector<int> node_order;
};

/// Supplies measurement modes: seeded sampling, or a fixed list of forced
/// outcome labels consumed in order.
class OutcomeSource {
 public:
  static OutcomeSource seeded(std::uint64_t seed);
  static OutcomeSource forced(std::vector<std::uint64_t> labels);

  bool is_forced() const noexcept { return !rng_.has_value(); }
  MeasureMode next();
  std::size_t consumed() const noexcept { return cursor_; }
  /// Forced labels not yet used.
  std::size_t remaining() const noexcept { return labels_.size() - cursor_; }

 private:
  OutcomeSource() = default;

  std::optional<std::mt19937_64> rng_;
  std::vector<std::uint64_t> labels_;
  std::size_t cursor_ = 0;
};

/// One node's measurements and who they were sent to (pair indices).
struct LogEntry {
  int node = -1;
  std::vector<MeasurementOutcome> outcomes;
  std::vector<std::size_t> recipients;
};

/// The free classical channel of one protocol run.
struct MessageLog {
  std::vector<int> node_order;
  std::vector<LogEntry> entries;
  std::uint64_t vector_elements_sent = 0;  ///< elements of R^q
  std::uint64_t ring_elements_sent = 0;    ///< elements of R (vector elements x q)
  std::uint64_t quantum_registers_sent = 0;

  /// Outcome labels in processing order: the forced-branch encoding of this run.
  std::vector<std::uint64_t> branch() const;
};

/// Correction functions h_i: R^q -> Q/Z, tabulated per basis label.
class PhaseTable {
 public:
  PhaseTable() = default;
  explicit PhaseTable(std::vector<std::vector<Phase>> table) : h_(std::move(table)) {}

  std::size_t k() const noexcept { return h_.size(); }
  std::span<const Phase> h(std::size_t pair) const { return h_.at(pair); }
  const Phase& at(std::size_t pair, std::uint64_t label) const { return h_.at(pair).at(label); }
  /// h_1(x_1) + ... + h_k(x_k).
  Phase total(std::span<const std::uint64_t> labels) const;
  bool all_zero() const;
  /// h_i(x + x') == h_i(x) + h_i(x') for all i, x, x' (exhaustive).
  bool is_additive(const Ring& ring, std::size_t q) const;

 private:
  std::vector<std::vector<Phase>> h_;
};

/// Simulates one node: coding unitary into fresh registers on the outgoing
/// edges, Fourier transform and measurement of every incoming register.
/// Register ids are edge indices. Returns the outcomes in input-edge order
/// (empty when a copy node is skipped under `copy_skip`).
std::vector<MeasurementOutcome> encode_node(StateVector& state, int node, const Instance& inst,
                                            OutcomeSource& source, bool copy_skip = false);

/// h_i tabulated from the log entries visible to target i: those that list
/// i as a recipient, plus the target's own measurements. Throws
/// ValidationError for a measured register the map does not cover.
PhaseTable compute_corrections(const MessageLog& log, const TransferMap& tmap,
                               const Instance& inst);

/// h(x_1..x_k) from every log entry: the phase the run applies to basis
/// input |x_1..x_k> before corrections.
Phase accumulated_phase(const MessageLog& log, const TransferMap& tmap, const Instance& inst,
                        std::span<const RingVector> inputs);

struct RunResult {
  StateVector output;          ///< registers 0..k-1 hold T_1..T_k
  StateVector pre_correction;  ///< same roster, before the target corrections
  MessageLog log;
  PhaseTable corrections;
  double probability = 1.0;  ///< product of the outcome probabilities
};

/// Runs the node-by-node simulation and target corrections. `input` must
/// hold registers 0..k-1 (the sources, pair order). Throws SchemeInvalid
/// when the classical check fails.
RunResult run_protocol(const Instance& inst, const StateVector& input, OutcomeSource& source,
                       const ProtocolOptions& opts = {});

struct NodeCost {
  int node = -1;
  std::size_t fan_in = 0;
  std::size_t fan_out = 0;
  bool copy = false;
  std::size_t nontrivial_coefficients = 0;
  std::uint64_t elements_sent = 0;
};

struct CostReport {
  std::size_t k = 0;
  std::size_t max_fan_in = 0;
  std::size_t node_count = 0;
  std::uint64_t elements_sent = 0;       ///< elements of R^q
  std::uint64_t ring_elements_sent = 0;  ///< elements of R
  std::uint64_t bits_sent = 0;
  std::uint64_t bound_elements = 0;  ///< k M |V|
  std::uint64_t bound_bits = 0;      ///< k M |V| q ceil(log2 |R|)
  std::uint64_t quantum_registers_sent = 0;
  std::vector<NodeCost> nodes;

  bool within_bound() const noexcept { return elements_sent <= bound_elements; }
};

std::uint32_t ceil_log2(std::uint64_t n);

CostReport classical_cost(const MessageLog& log, const Instance& inst);

/// Number of measurements in one run.
std::uint64_t measurement_count(const Instance& inst, bool copy_skip = false);
/// (|R|^q)^measurement_count, saturating.
std::uint64_t branch_count(const Instance& inst, bool copy_skip = false);
/// Outcome labels of branch number `index` (first measurement most significant).
std::vector<std::uint64_t> branch_labels(const Instance& inst, std::uint64_t index,
                                         bool copy_skip = false);

inline constexpr std::uint64_t kDefaultBranchCap = 65536;

struct BranchResult {
  std::uint64_t index = 0;
  std::vector<std::uint64_t> outcomes;
  bool possible = true;  ///< false when a forced outcome had zero probability
  double probability = 0.0;
  double fidelity = 0.0;
};

struct EnumerationSummary {
  std::uint64_t branches = 0;
  std::uint64_t impossible = 0;
  double min_fidelity = 1.0;
  double max_fidelity = 0.0;
  double total_probability = 0.0;
  std::optional<BranchResult> worst;  ///< lowest-fidelity possible branch
};

/// Calls `fn` for every branch in index order; `run` is null for impossible
/// branches. The classical check runs once up front unless skipped. Throws
/// CapExceeded when branch_count() > cap.
void for_each_branch(const Instance& inst, const StateVector& input, const ProtocolOptions& opts,
                     std::uint64_t cap,
                     const std::function<void(const BranchResult&, const RunResult*)>& fn);

/// Same branches as for_each_branch, summarized; `threads` > 1 spreads
/// fixed-size chunks over workers and merges them in chunk order.
EnumerationSummary enumerate_branches(const Instance& inst, const StateVector& input,
                                      const ProtocolOptions& opts = {},
                                      std::uint64_t cap = kDefaultBranchCap, unsigned threads = 1);

}  // namespace qnc
