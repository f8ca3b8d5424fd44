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

#include "qnc/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>

#include "qnc/error.hpp"

namespace qnc {
namespace {

std::vector<RegisterId> edge_registers(std::span<const int> edges) {
  std::vector<RegisterId> regs;
  for (int e : edges) regs.push_back(reg(e));
  return regs;
}

// Renames registers without transient id collisions.
void rename_all(StateVector& state, std::span<const RegisterId> from,
                std::span<const RegisterId> to) {
  for (std::size_t i = 0; i < from.size(); ++i) {
    state.relabel(from[i], reg(-1 - static_cast<std::int32_t>(i)));
  }
  for (std::size_t i = 0; i < from.size(); ++i) {
    state.relabel(reg(-1 - static_cast<std::int32_t>(i)), to[i]);
  }
}

std::vector<std::size_t> recipients_of(int node, const Instance& inst, const TransferMap& tmap,
                                       RecipientPolicy policy) {
  const Network& net = inst.network;
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < net.k(); ++j) {
    if (policy == RecipientPolicy::kBroadcast) {
      out.push_back(j);
      continue;
    }
    if (net.pair(j).target == node) continue;  // self-delivery is free
    const auto ins = net.in_edges(node);
    if (std::any_of(ins.begin(), ins.end(), [&](int e) { return !tmap.gamma(e, j).is_zero(); })) {
      out.push_back(j);
    }
  }
  return out;
}

std::vector<int> resolve_order(const Network& net, const std::vector<int>& requested) {
  if (requested.empty()) return net.topological_order();
  if (!net.is_topological_order(requested)) {
    throw ValidationError("node order is not a topological order of the network");
  }
  return requested;
}

std::uint64_t register_dim(const Instance& inst) {
  std::uint64_t d = 1;
  for (std::size_t i = 0; i < inst.scheme.q(); ++i) d *= inst.scheme.ring().size();
  return d;
}

}  // namespace

// OutcomeSource

OutcomeSource OutcomeSource::seeded(std::uint64_t seed) {
  OutcomeSource s;
  s.rng_.emplace(seed);
  return s;
}

OutcomeSource OutcomeSource::forced(std::vector<std::uint64_t> labels) {
  OutcomeSource s;
  s.labels_ = std::move(labels);
  return s;
}

MeasureMode OutcomeSource::next() {
  if (rng_) {
    ++cursor_;
    return Sampled{&*rng_};
  }
  if (cursor_ >= labels_.size()) {
    throw StateError("forced branch has only " + std::to_string(labels_.size()) +
                     " outcomes but the run needs more");
  }
  return Forced{labels_[cursor_++]};
}

// MessageLog / PhaseTable

std::vector<std::uint64_t> MessageLog::branch() const {
  std::vector<std::uint64_t> out;
  for (const auto& e : entries) {
    for (const auto& o : e.outcomes) out.push_back(o.outcome.label());
  }
  return out;
}

Phase PhaseTable::total(std::span<const std::uint64_t> labels) const {
  if (labels.size() != h_.size()) throw std::invalid_argument("one label per pair required");
  Phase p;
  for (std::size_t i = 0; i < labels.size(); ++i) p += at(i, labels[i]);
  return p;
}

bool PhaseTable::all_zero() const {
  return std::all_of(h_.begin(), h_.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](const Phase& p) { return p.is_zero(); });
  });
}

bool PhaseTable::is_additive(const Ring& ring, std::size_t q) const {
  for (const auto& row : h_) {
    const std::uint64_t d = row.size();
    for (std::uint64_t x = 0; x < d; ++x) {
      const auto vx = RingVector::from_label(ring, q, x);
      for (std::uint64_t y = 0; y < d; ++y) {
        const auto sum = (vx + RingVector::from_label(ring, q, y)).label();
        if (row[sum] != row[x] + row[y]) return false;
      }
    }
  }
  return true;
}

// Protocol

std::vector<MeasurementOutcome> encode_node(StateVector& state, int node, const Instance& inst,
                                            OutcomeSource& source, bool copy_skip) {
  const Network& net = inst.network;
  const auto ins = edge_registers(net.in_edges(node));
  const auto outs = edge_registers(net.out_edges(node));
  for (std::size_t j = 0; j < ins.size(); ++j) {
    if (!state.has_register(ins[j])) {
      throw StateError("node " + net.node_name(node) + ": input register for edge " +
                       net.edge(net.in_edges(node)[j]).id + " is not live");
    }
  }
  const auto& coeffs = inst.scheme.node(node).coeffs;

  if (copy_skip && inst.scheme.is_copy_node(node)) {
    const std::vector<RegisterId> rest(outs.begin() + 1, outs.end());
    const std::vector<std::vector<RingMatrix>> rest_coeffs(coeffs.begin() + 1, coeffs.end());
    state.apply_coding_unitary(ins, rest, rest_coeffs);
    state.relabel(ins.front(), outs.front());
    return {};
  }

  state.apply_coding_unitary(ins, outs, coeffs);
  for (auto r : ins) state.apply_fourier(r);
  std::vector<MeasurementOutcome> outcomes;
  for (auto r : ins) {
    auto o = state.measure(r, source.next());
    o.node = node;
    outcomes.push_back(std::move(o));
  }
  return outcomes;
}

PhaseTable compute_corrections(const MessageLog& log, const TransferMap& tmap,
                               const Instance& inst) {
  const Network& net = inst.network;
  const Ring& ring = inst.scheme.ring();
  const std::size_t q = inst.scheme.q();
  const std::uint64_t d = register_dim(inst);
  std::vector<std::vector<Phase>> h(net.k(), std::vector<Phase>(d));
  std::vector<RingVector> basis;
  for (std::uint64_t x = 0; x < d; ++x) basis.push_back(RingVector::from_label(ring, q, x));

  for (const auto& entry : log.entries) {
    std::vector<bool> visible(net.k(), false);
    for (auto j : entry.recipients) visible.at(j) = true;
    for (std::size_t j = 0; j < net.k(); ++j) {
      if (net.pair(j).target == entry.node) visible[j] = true;
    }
    for (const auto& o : entry.outcomes) {
      const int e = id_of(o.reg);
      if (e < 0 || static_cast<std::size_t>(e) >= tmap.edge_count()) {
        throw ValidationError("measured register " + std::to_string(e) +
                              " is absent from the transfer map");
      }
      for (std::size_t i = 0; i < net.k(); ++i) {
        if (!visible[i]) continue;
        const RingMatrix& gamma = tmap.gamma(e, i);
        for (std::uint64_t x = 0; x < d; ++x) {
          h[i][x] += vector_character(o.outcome, mat_vec(gamma, basis[x]));
        }
      }
    }
  }
  return PhaseTable(std::move(h));
}

Phase accumulated_phase(const MessageLog& log, const TransferMap& tmap, const Instance& inst,
                        std::span<const RingVector> inputs) {
  (void)inst;
  Phase total;
  for (const auto& entry : log.entries) {
    for (const auto& o : entry.outcomes) {
      total += vector_character(o.outcome, tmap.evaluate(id_of(o.reg), inputs));
    }
  }
  return total;
}

RunResult run_protocol(const Instance& inst, const StateVector& input, OutcomeSource& source,
                       const ProtocolOptions& opts) {
  const Network& net = inst.network;
  const std::size_t k = net.k();
  if (!input.ring().same_as(inst.scheme.ring()) || input.q() != inst.scheme.q()) {
    throw StateError("input state does not match the instance's ring and q");
  }
  std::vector<RegisterId> pair_regs;
  for (std::size_t i = 0; i < k; ++i) pair_regs.push_back(reg(static_cast<std::int32_t>(i)));
  if (!std::equal(pair_regs.begin(), pair_regs.end(), input.registers().begin(),
                  input.registers().end())) {
    throw StateError("input state must hold registers 0..k-1 in pair order");
  }
  if (!opts.skip_classical_check) {
    const auto verdict = verify_solution(inst, opts.verify_cap);
    if (!verdict.valid) throw SchemeInvalid("classical coding scheme is not a solution");
  }
  const auto order = resolve_order(net, opts.node_order);
  const TransferMap tmap = transfer_coefficients(inst);

  StateVector state = input;
  state.set_max_amplitudes(opts.max_amplitudes);
  std::vector<RegisterId> source_regs, target_regs;
  for (std::size_t i = 0; i < k; ++i) {
    source_regs.push_back(reg(net.source_edge(i)));
    target_regs.push_back(reg(net.target_edge(i)));
  }
  rename_all(state, pair_regs, source_regs);

  MessageLog log;
  log.node_order = order;
  for (int v : order) {
    auto outcomes = encode_node(state, v, inst, source, opts.copy_skip);
    for (int e : net.out_edges(v)) {
      if (net.edge(e).kind == EdgeKind::kReal) ++log.quantum_registers_sent;
    }
    if (outcomes.empty()) continue;
    LogEntry entry;
    entry.node = v;
    entry.recipients = recipients_of(v, inst, tmap, opts.policy);
    entry.outcomes = std::move(outcomes);
    log.vector_elements_sent += entry.outcomes.size() * entry.recipients.size();
    entry.outcomes.shrink_to_fit();
    log.entries.push_back(std::move(entry));
  }
  log.ring_elements_sent = log.vector_elements_sent * inst.scheme.q();
  if (source.is_forced() && source.remaining() != 0) {
    throw StateError("forced branch has " + std::to_string(source.remaining()) +
                     " unused outcomes");
  }

  state.reorder(target_regs);
  rename_all(state, target_regs, pair_regs);
  PhaseTable corrections = compute_corrections(log, tmap, inst);
  StateVector pre = state;
  for (std::size_t i = 0; i < k; ++i) {
    state.apply_phase(pair_regs[i], [&](std::uint64_t x) { return corrections.at(i, x); }, -1);
  }
  double prob = 1.0;
  for (const auto& e : log.entries) {
    for (const auto& o : e.outcomes) prob *= o.probability;
  }
  return RunResult{std::move(state), std::move(pre), std::move(log), std::move(corrections), prob};
}

// Costs

std::uint32_t ceil_log2(std::uint64_t n) {
  std::uint32_t bits = 0;
  while ((std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

CostReport classical_cost(const MessageLog& log, const Instance& inst) {
  const Network& net = inst.network;
  CostReport r;
  r.k = net.k();
  r.max_fan_in = net.max_fan_in();
  r.node_count = net.node_count();
  r.elements_sent = log.vector_elements_sent;
  r.ring_elements_sent = log.ring_elements_sent;
  const std::uint32_t bits_per_elem = ceil_log2(inst.scheme.ring().size());
  r.bits_sent = r.ring_elements_sent * bits_per_elem;
  r.bound_elements = r.k * r.max_fan_in * r.node_count;
  r.bound_bits = r.bound_elements * inst.scheme.q() * bits_per_elem;
  r.quantum_registers_sent = log.quantum_registers_sent;
  for (std::size_t vi = 0; vi < net.node_count(); ++vi) {
    const int v = static_cast<int>(vi);
    NodeCost c;
    c.node = v;
    c.fan_in = net.fan_in(v);
    c.fan_out = net.fan_out(v);
    c.copy = inst.scheme.is_copy_node(v);
    c.nontrivial_coefficients = inst.scheme.nontrivial_coefficients(v);
    for (const auto& e : log.entries) {
      if (e.node == v) c.elements_sent += e.outcomes.size() * e.recipients.size();
    }
    r.nodes.push_back(c);
  }
  return r;
}

// Branch enumeration

std::uint64_t measurement_count(const Instance& inst, bool copy_skip) {
  std::uint64_t n = 0;
  for (std::size_t v = 0; v < inst.network.node_count(); ++v) {
    const int node = static_cast<int>(v);
    if (copy_skip && inst.scheme.is_copy_node(node)) continue;
    n += inst.network.fan_in(node);
  }
  return n;
}

std::uint64_t branch_count(const Instance& inst, bool copy_skip) {
  const std::uint64_t d = register_dim(inst);
  const std::uint64_t m = measurement_count(inst, copy_skip);
  std::uint64_t total = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / d) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= d;
  }
  return total;
}

std::vector<std::uint64_t> branch_labels(const Instance& inst, std::uint64_t index,
                                         bool copy_skip) {
  const std::uint64_t d = register_dim(inst);
  std::vector<std::uint64_t> labels(measurement_count(inst, copy_skip));
  for (std::size_t i = labels.size(); i-- > 0;) {
    labels[i] = index % d;
    index /= d;
  }
  return labels;
}

namespace {

std::optional<RunResult> run_branch(const Instance& inst, const StateVector& input,
                                    const ProtocolOptions& opts, std::uint64_t index,
                                    BranchResult& result) {
  result.index = index;
  result.outcomes = branch_labels(inst, index, opts.copy_skip);
  auto src = OutcomeSource::forced(result.outcomes);
  try {
    auto run = run_protocol(inst, input, src, opts);
    result.possible = true;
    result.probability = run.probability;
    result.fidelity = fidelity(input, run.output);
    return run;
  } catch (const ZeroProbabilityOutcome&) {
    result.possible = false;
    result.probability = 0.0;
    result.fidelity = 0.0;
    return std::nullopt;
  }
}

ProtocolOptions prepare_enumeration(const Instance& inst, const ProtocolOptions& opts,
                                    std::uint64_t cap) {
  const std::uint64_t total = branch_count(inst, opts.copy_skip);
  if (total > cap) {
    throw CapExceeded(std::to_string(measurement_count(inst, opts.copy_skip)) +
                          " measurements give " +
                          (total == std::numeric_limits<std::uint64_t>::max()
                               ? std::string("too many")
                               : std::to_string(total)) +
                          " branches, above the cap of " + std::to_string(cap),
                      "--max-branches");
  }
  if (!opts.skip_classical_check) {
    const auto verdict = verify_solution(inst, opts.verify_cap);
    if (!verdict.valid) throw SchemeInvalid("classical coding scheme is not a solution");
  }
  ProtocolOptions inner = opts;
  inner.skip_classical_check = true;
  return inner;
}

void accumulate(EnumerationSummary& s, const BranchResult& b) {
  ++s.branches;
  if (!b.possible) {
    ++s.impossible;
    return;
  }
  s.total_probability += b.probability;
  s.max_fidelity = std::max(s.max_fidelity, b.fidelity);
  if (!s.worst || b.fidelity < s.worst->fidelity) {
    s.min_fidelity = b.fidelity;
    s.worst = b;
  }
}

}  // namespace

void for_each_branch(const Instance& inst, const StateVector& input, const ProtocolOptions& opts,
                     std::uint64_t cap,
                     const std::function<void(const BranchResult&, const RunResult*)>& fn) {
  const ProtocolOptions inner = prepare_enumeration(inst, opts, cap);
  const std::uint64_t total = branch_count(inst, opts.copy_skip);
  for (std::uint64_t b = 0; b < total; ++b) {
    BranchResult result;
    const auto run = run_branch(inst, input, inner, b, result);
    fn(result, run ? &*run : nullptr);
  }
}

EnumerationSummary enumerate_branches(const Instance& inst, const StateVector& input,
                                      const ProtocolOptions& opts, std::uint64_t cap,
                                      unsigned threads) {
  const ProtocolOptions inner = prepare_enumeration(inst, opts, cap);
  const std::uint64_t total = branch_count(inst, opts.copy_skip);
  constexpr std::uint64_t kChunk = 256;
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<EnumerationSummary> partial(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      for (std::uint64_t b = c * kChunk; b < std::min(total, (c + 1) * kChunk); ++b) {
        BranchResult result;
        run_branch(inst, input, inner, b, result);
        accumulate(partial[c], result);
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(chunks)));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  }

  EnumerationSummary summary;
  for (const auto& p : partial) {
    summary.branches += p.branches;
    summary.impossible += p.impossible;
    summary.total_probability += p.total_probability;
    summary.max_fidelity = std::max(summary.max_fidelity, p.max_fidelity);
    if (p.worst && (!summary.worst || p.worst->fidelity < summary.worst->fidelity)) {
      summary.worst = p.worst;
      summary.min_fidelity = p.min_fidelity;
    }
  }
  if (!summary.worst) summary.min_fidelity = 0.0;
  return summary;
}

}  // namespace qnc
