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

#include "qnc/network.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qnc/error.hpp"

namespace qnc {

std::string source_edge_name(std::size_t pair) { return "src:" + std::to_string(pair + 1); }
std::string target_edge_name(std::size_t pair) { return "tgt:" + std::to_string(pair + 1); }

namespace {

bool is_reserved_edge_name(std::string_view id) {
  return id.starts_with("src:") || id.starts_with("tgt:");
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
  return out;
}

}  // namespace

Network Network::build(const NetworkDesc& desc) {
  Network net;
  std::unordered_map<std::string, int> node_ids;
  for (const auto& name : desc.nodes) {
    if (name.empty()) throw ValidationError("node ids must be non-empty");
    if (!node_ids.emplace(name, static_cast<int>(net.nodes_.size())).second) {
      throw ValidationError("duplicated node id \"" + name + "\"");
    }
    net.nodes_.push_back(name);
  }
  auto node_of = [&](const std::string& name, const std::string& context) {
    auto it = node_ids.find(name);
    if (it == node_ids.end()) {
      throw ValidationError("dangling edge endpoint: " + context + " refers to unknown node \"" +
                            name + "\"");
    }
    return it->second;
  };

  std::unordered_set<std::string> edge_ids;
  for (const auto& e : desc.edges) {
    if (e.id.empty()) throw ValidationError("edge ids must be non-empty");
    if (is_reserved_edge_name(e.id)) {
      throw ValidationError("edge id \"" + e.id + "\" uses a reserved virtual-edge prefix");
    }
    if (!edge_ids.insert(e.id).second) throw ValidationError("duplicated edge id \"" + e.id + "\"");
    Edge edge;
    edge.id = e.id;
    edge.from = node_of(e.from, "edge " + e.id);
    edge.to = node_of(e.to, "edge " + e.id);
    if (edge.from == edge.to) throw ValidationError("self-loop on edge \"" + e.id + "\"");
    net.edges_.push_back(std::move(edge));
  }
  net.real_edges_ = net.edges_.size();

  for (std::size_t i = 0; i < desc.pairs.size(); ++i) {
    const auto& p = desc.pairs[i];
    const std::string ctx = "pair " + std::to_string(i + 1);
    net.pairs_.push_back(Pair{node_of(p.source, ctx), node_of(p.target, ctx)});
  }
  const std::size_t k = net.pairs_.size();
  for (std::size_t i = 0; i < k; ++i) {
    net.edges_.push_back(Edge{source_edge_name(i), -1, net.pairs_[i].source, EdgeKind::kSourceVirtual,
                              static_cast<int>(i)});
  }
  for (std::size_t i = 0; i < k; ++i) {
    net.edges_.push_back(Edge{target_edge_name(i), net.pairs_[i].target, -1, EdgeKind::kTargetVirtual,
                              static_cast<int>(i)});
  }

  // Default orders: virtual inputs first, virtual outputs last.
  const std::size_t n = net.nodes_.size();
  net.in_.assign(n, {});
  net.out_.assign(n, {});
  for (std::size_t i = 0; i < k; ++i) {
    net.in_[static_cast<std::size_t>(net.pairs_[i].source)].push_back(net.source_edge(i));
  }
  for (std::size_t e = 0; e < net.real_edges_; ++e) {
    net.in_[static_cast<std::size_t>(net.edges_[e].to)].push_back(static_cast<int>(e));
    net.out_[static_cast<std::size_t>(net.edges_[e].from)].push_back(static_cast<int>(e));
  }
  for (std::size_t i = 0; i < k; ++i) {
    net.out_[static_cast<std::size_t>(net.pairs_[i].target)].push_back(net.target_edge(i));
  }

  if (net.topological_order().size() != n) throw ValidationError("graph has a cycle");

  auto apply_order = [&](const std::vector<std::vector<std::string>>& lists,
                         std::vector<std::vector<int>>& actual, const char* what) {
    if (lists.empty()) return;
    if (lists.size() != n) throw ValidationError(std::string(what) + " lists must cover every node");
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<int> order;
      for (const auto& id : lists[v]) {
        const int e = net.edge_index(id);
        if (e < 0) {
          throw ValidationError("scheme shape mismatch at node " + net.nodes_[v] + ": unknown " +
                                what + " edge \"" + id + "\"");
        }
        order.push_back(e);
      }
      auto a = actual[v];
      auto b = order;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        std::vector<std::string> expected;
        for (int e : actual[v]) expected.push_back(net.edges_[static_cast<std::size_t>(e)].id);
        throw ValidationError("scheme shape mismatch at node " + net.nodes_[v] + ": " + what +
                              " [" + join(lists[v]) + "] but the graph has [" + join(expected) +
                              "]");
      }
      actual[v] = std::move(order);
    }
  };
  apply_order(desc.inputs, net.in_, "inputs");
  apply_order(desc.outputs, net.out_, "outputs");
  return net;
}

int Network::node_index(std::string_view name) const {
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (nodes_[v] == name) return static_cast<int>(v);
  }
  return -1;
}

int Network::edge_index(std::string_view id) const {
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].id == id) return static_cast<int>(e);
  }
  return -1;
}

std::size_t Network::max_fan_in() const {
  std::size_t m = 0;
  for (const auto& in : in_) m = std::max(m, in.size());
  return m;
}

std::vector<int> Network::topological_order() const {
  const std::size_t n = nodes_.size();
  std::vector<std::size_t> indeg(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (std::size_t e = 0; e < real_edges_; ++e) {
    ++indeg[static_cast<std::size_t>(edges_[e].to)];
    succ[static_cast<std::size_t>(edges_[e].from)].push_back(edges_[e].to);
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) ready.push(static_cast<int>(v));
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : succ[static_cast<std::size_t>(v)]) {
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
    }
  }
  return order;
}

bool Network::is_topological_order(std::span<const int> order) const {
  const std::size_t n = nodes_.size();
  if (order.size() != n) return false;
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = order[i];
    if (v < 0 || static_cast<std::size_t>(v) >= n || pos[static_cast<std::size_t>(v)] != n) {
      return false;
    }
    pos[static_cast<std::size_t>(v)] = i;
  }
  for (std::size_t e = 0; e < real_edges_; ++e) {
    if (pos[static_cast<std::size_t>(edges_[e].from)] >= pos[static_cast<std::size_t>(edges_[e].to)]) {
      return false;
    }
  }
  return true;
}

// CodingScheme

CodingScheme::CodingScheme(RingPtr ring, std::size_t q, std::vector<NodeCoding> nodes)
    : ring_(std::move(ring)), q_(q), nodes_(std::move(nodes)) {
  if (!ring_) throw std::invalid_argument("coding scheme needs a ring");
  if (q_ == 0) throw ValidationError("q must be positive");
  for (const auto& node : nodes_) {
    for (const auto& row : node.coeffs) {
      for (const auto& m : row) {
        if (!m.ring().same_as(*ring_)) throw RingMismatch("coefficient from a different ring");
        if (m.dim() != q_) throw RingMismatch("coefficient matrix is not q x q");
      }
    }
  }
}

RingVector CodingScheme::apply(int v, std::size_t out, std::span<const RingVector> inputs) const {
  const auto& row = node(v).coeffs.at(out);
  if (row.size() != inputs.size()) {
    throw RingMismatch("node function expects " + std::to_string(row.size()) + " arguments");
  }
  RingVector acc = RingVector::zero(*ring_, q_);
  for (std::size_t j = 0; j < row.size(); ++j) acc = acc + mat_vec(row[j], inputs[j]);
  return acc;
}

bool CodingScheme::is_copy_node(int v) const {
  const auto& c = node(v).coeffs;
  if (c.empty()) return false;
  return std::all_of(c.begin(), c.end(),
                     [](const auto& row) { return row.size() == 1 && row.front().is_identity(); });
}

std::size_t CodingScheme::nontrivial_coefficients(int v) const {
  std::size_t count = 0;
  for (const auto& row : node(v).coeffs) {
    for (const auto& m : row) count += (!m.is_zero() && !m.is_identity()) ? 1 : 0;
  }
  return count;
}

void validate_scheme(const Network& net, const CodingScheme& scheme) {
  if (scheme.node_count() != net.node_count()) {
    throw ValidationError("coding scheme covers " + std::to_string(scheme.node_count()) +
                          " nodes, network has " + std::to_string(net.node_count()));
  }
  for (std::size_t vi = 0; vi < net.node_count(); ++vi) {
    const int v = static_cast<int>(vi);
    if (net.fan_in(v) == 0) {
      throw ValidationError("node " + net.node_name(v) + " has fan-in 0 but is not a source");
    }
    const auto& c = scheme.node(v).coeffs;
    if (c.size() != net.fan_out(v)) {
      throw ValidationError("scheme shape mismatch at node " + net.node_name(v) + ": " +
                            std::to_string(c.size()) + " output rows for fan-out " +
                            std::to_string(net.fan_out(v)));
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].size() != net.fan_in(v)) {
        throw ValidationError("scheme shape mismatch at node " + net.node_name(v) + ": output " +
                              net.edge(net.out_edges(v)[i]).id + " has " +
                              std::to_string(c[i].size()) + " coefficients for fan-in " +
                              std::to_string(net.fan_in(v)));
      }
    }
  }
}

std::uint64_t Instance::input_space_size() const {
  const std::uint64_t d = [&] {
    std::uint64_t x = 1;
    for (std::size_t i = 0; i < scheme.q(); ++i) {
      if (x > std::numeric_limits<std::uint64_t>::max() / scheme.ring().size()) {
        return std::numeric_limits<std::uint64_t>::max();
      }
      x *= scheme.ring().size();
    }
    return x;
  }();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < network.k(); ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / d) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= d;
  }
  return total;
}

namespace {

void check_inputs(const Instance& inst, std::span<const RingVector> inputs) {
  if (inputs.size() != inst.network.k()) {
    throw RingMismatch("expected " + std::to_string(inst.network.k()) + " source inputs, got " +
                       std::to_string(inputs.size()));
  }
  for (const auto& x : inputs) {
    if (!x.ring().same_as(inst.scheme.ring())) throw RingMismatch("input from a different ring");
    if (x.size() != inst.scheme.q()) throw RingMismatch("input vector length differs from q");
  }
}

}  // namespace

std::vector<RingVector> evaluate_edges(const Instance& inst, std::span<const RingVector> inputs,
                                       std::span<const int> order) {
  check_inputs(inst, inputs);
  const Network& net = inst.network;
  std::vector<int> default_order;
  if (order.empty() && net.node_count() != 0) {
    default_order = net.topological_order();
    order = default_order;
  } else if (!net.is_topological_order(order)) {
    throw ValidationError("node order is not a topological order");
  }
  std::vector<RingVector> values(net.edge_count(),
                                 RingVector::zero(inst.scheme.ring(), inst.scheme.q()));
  for (std::size_t i = 0; i < net.k(); ++i) {
    values[static_cast<std::size_t>(net.source_edge(i))] = inputs[i];
  }
  std::vector<RingVector> args;
  for (int v : order) {
    args.clear();
    for (int e : net.in_edges(v)) args.push_back(values[static_cast<std::size_t>(e)]);
    const auto outs = net.out_edges(v);
    for (std::size_t i = 0; i < outs.size(); ++i) {
      values[static_cast<std::size_t>(outs[i])] = inst.scheme.apply(v, i, args);
    }
  }
  return values;
}

std::vector<RingVector> evaluate_classical(const Instance& inst,
                                           std::span<const RingVector> inputs) {
  const auto values = evaluate_edges(inst, inputs);
  std::vector<RingVector> out;
  for (std::size_t i = 0; i < inst.network.k(); ++i) {
    out.push_back(values[static_cast<std::size_t>(inst.network.target_edge(i))]);
  }
  return out;
}

std::vector<RingVector> input_tuple(const Instance& inst, std::uint64_t index) {
  const Ring& ring = inst.scheme.ring();
  const std::size_t q = inst.scheme.q();
  std::uint64_t d = 1;
  for (std::size_t i = 0; i < q; ++i) d *= ring.size();
  const std::size_t k = inst.network.k();
  std::vector<RingVector> xs(k, RingVector::zero(ring, q));
  for (std::size_t j = k; j-- > 0;) {
    xs[j] = RingVector::from_label(ring, q, index % d);
    index /= d;
  }
  return xs;
}

VerifyResult verify_solution(const Instance& inst, std::uint64_t cap) {
  const std::uint64_t total = inst.input_space_size();
  if (total > cap) {
    throw CapExceeded("exhaustive verification needs " + std::to_string(total) +
                          " input tuples, above the cap of " + std::to_string(cap),
                      "--max-inputs");
  }
  VerifyResult result;
  for (std::uint64_t t = 0; t < total; ++t) {
    const auto xs = input_tuple(inst, t);
    auto ys = evaluate_classical(inst, xs);
    ++result.checked;
    if (ys != xs) {
      result.valid = false;
      result.counterexample_input = xs;
      result.counterexample_output = std::move(ys);
      break;
    }
  }
  return result;
}

RingVector TransferMap::evaluate(int e, std::span<const RingVector> inputs) const {
  const auto& r = row(e);
  if (r.size() != inputs.size()) throw RingMismatch("transfer row length differs from k");
  if (r.empty()) throw RingMismatch("empty transfer row");
  RingVector acc = RingVector::zero(r.front().ring(), r.front().dim());
  for (std::size_t j = 0; j < r.size(); ++j) acc = acc + mat_vec(r[j], inputs[j]);
  return acc;
}

TransferMap transfer_coefficients(const Instance& inst) {
  const Network& net = inst.network;
  const Ring& ring = inst.scheme.ring();
  const std::size_t q = inst.scheme.q();
  const std::size_t k = net.k();
  std::vector<std::vector<RingMatrix>> rows(net.edge_count(),
                                            std::vector<RingMatrix>(k, RingMatrix::zero(ring, q)));
  for (std::size_t j = 0; j < k; ++j) {
    rows[static_cast<std::size_t>(net.source_edge(j))][j] = RingMatrix::identity(ring, q);
  }
  for (int v : net.topological_order()) {
    const auto ins = net.in_edges(v);
    const auto outs = net.out_edges(v);
    for (std::size_t i = 0; i < outs.size(); ++i) {
      std::vector<RingMatrix> acc(k, RingMatrix::zero(ring, q));
      for (std::size_t l = 0; l < ins.size(); ++l) {
        const RingMatrix& b = inst.scheme.coeff(v, i, l);
        const auto& in_row = rows[static_cast<std::size_t>(ins[l])];
        for (std::size_t j = 0; j < k; ++j) acc[j] = acc[j] + b * in_row[j];
      }
      rows[static_cast<std::size_t>(outs[i])] = std::move(acc);
    }
  }
  return TransferMap(std::move(rows));
}

}  // namespace qnc
