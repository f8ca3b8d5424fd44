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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnc/ring.hpp"

namespace qnc {

enum class EdgeKind { kReal, kSourceVirtual, kTargetVirtual };

/// Directed unit-capacity edge. Virtual edges have one dangling end (-1).
struct Edge {
  std::string id;
  int from = -1;
  int to = -1;
  EdgeKind kind = EdgeKind::kReal;
  int pair = -1;  ///< pair index for virtual edges
};

/// Source/target node indices of one unicast session.
struct Pair {
  int source = -1;
  int target = -1;
};

/// Declarative description used to build a Network; node and edge
/// references are by name. Empty `inputs`/`outputs` entries mean
/// declaration order (virtual in-edges first, virtual out-edges last).
struct NetworkDesc {
  struct EdgeDesc {
    std::string id, from, to;
  };
  struct PairDesc {
    std::string source, target;
  };
  std::vector<std::string> nodes;
  std::vector<EdgeDesc> edges;
  std::vector<PairDesc> pairs;
  std::vector<std::vector<std::string>> inputs;   ///< per node, edge ids
  std::vector<std::vector<std::string>> outputs;  ///< per node, edge ids
};

/// Virtual in-edge id of pair i (0-based index, 1-based in the name).
std::string source_edge_name(std::size_t pair);
/// Virtual out-edge id of pair i.
std::string target_edge_name(std::size_t pair);

/// Directed acyclic k-pair instance with materialized virtual edges.
///
/// Edge indices: real edges [0, E), then the k virtual in-edges of the
/// sources, then the k virtual out-edges of the targets.
class Network {
 public:
  /// Throws ValidationError on dangling endpoints, duplicate edge ids,
  /// self-loops, cycles, or input/output lists that disagree with the graph.
  static Network build(const NetworkDesc& desc);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  const std::string& node_name(int v) const { return nodes_.at(static_cast<std::size_t>(v)); }
  int node_index(std::string_view name) const;

  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t real_edge_count() const noexcept { return real_edges_; }
  const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
  int edge_index(std::string_view id) const;

  std::size_t k() const noexcept { return pairs_.size(); }
  const Pair& pair(std::size_t i) const { return pairs_.at(i); }
  int source_edge(std::size_t i) const { return static_cast<int>(real_edges_ + i); }
  int target_edge(std::size_t i) const { return static_cast<int>(real_edges_ + pairs_.size() + i); }

  /// Ordered incoming edges of v (argument order of its coding functions).
  std::span<const int> in_edges(int v) const { return in_.at(static_cast<std::size_t>(v)); }
  std::span<const int> out_edges(int v) const { return out_.at(static_cast<std::size_t>(v)); }
  std::size_t fan_in(int v) const { return in_edges(v).size(); }
  std::size_t fan_out(int v) const { return out_edges(v).size(); }
  /// Largest fan-in, virtual in-edges included.
  std::size_t max_fan_in() const;

  /// Kahn's algorithm, ties broken by declaration order.
  std::vector<int> topological_order() const;
  bool is_topological_order(std::span<const int> order) const;

 private:
  Network() = default;

  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::size_t real_edges_ = 0;
  std::vector<Pair> pairs_;
  std::vector<std::vector<int>> in_;
  std::vector<std::vector<int>> out_;
};

/// Coefficients of one node: coeffs[i][j] = B^(v,i)_j, so that
/// f_i(y_1..y_m) = sum_j coeffs[i][j] y_j.
struct NodeCoding {
  std::vector<std::vector<RingMatrix>> coeffs;
};

/// q-vector-linear coding scheme over a ring (q = 1 is scalar linear coding).
class CodingScheme {
 public:
  CodingScheme(RingPtr ring, std::size_t q, std::vector<NodeCoding> nodes);

  const Ring& ring() const noexcept { return *ring_; }
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  std::size_t q() const noexcept { return q_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const NodeCoding& node(int v) const { return nodes_.at(static_cast<std::size_t>(v)); }
  const RingMatrix& coeff(int v, std::size_t out, std::size_t in) const {
    return nodes_.at(static_cast<std::size_t>(v)).coeffs.at(out).at(in);
  }

  /// f_{v,out}(inputs).
  RingVector apply(int v, std::size_t out, std::span<const RingVector> inputs) const;

  /// Fan-in 1 and every output coefficient is the identity.
  bool is_copy_node(int v) const;

  /// Number of coefficients that are neither zero nor the identity.
  std::size_t nontrivial_coefficients(int v) const;

 private:
  RingPtr ring_;
  std::size_t q_;
  std::vector<NodeCoding> nodes_;
};

/// Throws ValidationError unless the coefficient arrays match the node
/// fan-in/fan-out and every non-source node has fan-in at least 1.
void validate_scheme(const Network& net, const CodingScheme& scheme);

/// A validated network with its coding scheme.
struct Instance {
  Network network;
  CodingScheme scheme;

  /// (|R|^q)^k, saturating at UINT64_MAX.
  std::uint64_t input_space_size() const;
};

/// Parses and validates an instance document (JSON, see docs/formats.md).
/// `phi` selects the additive coordinates used by the character pairing.
Instance parse_instance(std::string_view json_text, PhiChoice phi = PhiChoice::kCanonical);
Instance load_instance(const std::filesystem::path& path, PhiChoice phi = PhiChoice::kCanonical);

/// Value carried by every edge when the sources receive `inputs` (pair
/// order). `order` defaults to Network::topological_order().
std::vector<RingVector> evaluate_edges(const Instance& inst, std::span<const RingVector> inputs,
                                       std::span<const int> order = {});

/// Values on the virtual out-edges, in pair order.
std::vector<RingVector> evaluate_classical(const Instance& inst,
                                           std::span<const RingVector> inputs);

/// Input tuple number `index` of the (|R|^q)^k tuples, pair 0 most significant.
std::vector<RingVector> input_tuple(const Instance& inst, std::uint64_t index);

inline constexpr std::uint64_t kDefaultVerifyCap = 65536;

struct VerifyResult {
  bool valid = true;
  std::uint64_t checked = 0;
  std::vector<RingVector> counterexample_input;   ///< empty when valid
  std::vector<RingVector> counterexample_output;  ///< empty when valid
};

/// Exhaustive check that every input tuple is delivered to the paired
/// targets. Throws CapExceeded when (|R|^q)^k > cap.
VerifyResult verify_solution(const Instance& inst, std::uint64_t cap = kDefaultVerifyCap);

/// gamma rows: register on edge e carries sum_j row(e)[j] x_j.
class TransferMap {
 public:
  explicit TransferMap(std::vector<std::vector<RingMatrix>> rows) : rows_(std::move(rows)) {}

  std::size_t edge_count() const noexcept { return rows_.size(); }
  const std::vector<RingMatrix>& row(int e) const { return rows_.at(static_cast<std::size_t>(e)); }
  const RingMatrix& gamma(int e, std::size_t pair) const { return row(e).at(pair); }
  RingVector evaluate(int e, std::span<const RingVector> inputs) const;

 private:
  std::vector<std::vector<RingMatrix>> rows_;
};

/// Composes node coefficient matrices along the topological order; the
/// virtual in-edge of pair j is seeded with the unit row (0,..,I,..,0).
TransferMap transfer_coefficients(const Instance& inst);

}  // namespace qnc
