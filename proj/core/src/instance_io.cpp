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

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qnc/error.hpp"
#include "qnc/network.hpp"

namespace qnc {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& context) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(context + ": missing field \"" + key + "\"");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& context) {
  const json& v = field(obj, key, context);
  if (!v.is_string()) throw ParseError(context + ": field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

const json& array_field(const json& obj, const char* key, const std::string& context) {
  const json& v = field(obj, key, context);
  if (!v.is_array()) throw ParseError(context + ": field \"" + key + "\" must be an array");
  return v;
}

std::optional<std::uint32_t> parse_element(const json& j, const Ring& ring) {
  std::vector<std::uint32_t> coords;
  if (j.is_number_integer()) {
    if (ring.coord_count() != 1) return std::nullopt;
    const auto v = j.get<std::int64_t>();
    if (v < 0) return std::nullopt;
    coords.push_back(static_cast<std::uint32_t>(v));
  } else if (j.is_array() && j.size() == ring.coord_count()) {
    for (const auto& c : j) {
      if (!c.is_number_integer() || c.get<std::int64_t>() < 0) return std::nullopt;
      coords.push_back(static_cast<std::uint32_t>(c.get<std::int64_t>()));
    }
  } else {
    return std::nullopt;
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= ring.moduli()[i]) return std::nullopt;
  }
  return ring.index_of(coords);
}

std::optional<RingMatrix> parse_matrix(const json& j, const Ring& ring, std::size_t q) {
  if (j.is_array() && j.size() == q &&
      std::all_of(j.begin(), j.end(), [&](const json& row) { return row.is_array() && row.size() == q; })) {
    std::vector<std::uint32_t> entries;
    bool ok = true;
    for (const auto& row : j) {
      for (const auto& x : row) {
        auto e = parse_element(x, ring);
        if (!e) {
          ok = false;
          break;
        }
        entries.push_back(*e);
      }
    }
    if (ok) return RingMatrix(ring, q, std::move(entries));
  }
  if (q == 1) {
    if (auto e = parse_element(j, ring)) return RingMatrix(ring, 1, {*e});
  }
  return std::nullopt;
}

}  // namespace

Instance parse_instance(std::string_view json_text, PhiChoice phi) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance must be a JSON object");
  const std::string top = "instance";

  const std::string descriptor = string_field(doc, "ring", top);
  RingPtr ring;
  try {
    ring = Ring::parse(descriptor, phi);
  } catch (const ParseError& e) {
    throw ParseError(std::string("unknown ring descriptor: ") + e.what());
  }

  std::size_t q = 1;
  if (auto it = doc.find("q"); it != doc.end()) {
    if (!it->is_number_integer() || it->get<std::int64_t>() < 1) {
      throw ParseError("instance: \"q\" must be a positive integer");
    }
    q = static_cast<std::size_t>(it->get<std::int64_t>());
  }

  NetworkDesc desc;
  for (const auto& n : array_field(doc, "nodes", top)) {
    if (!n.is_string()) throw ParseError("instance: node ids must be strings");
    desc.nodes.push_back(n.get<std::string>());
  }
  for (const auto& e : array_field(doc, "edges", top)) {
    if (!e.is_object()) throw ParseError("instance: edges must be objects");
    desc.edges.push_back({string_field(e, "id", "edge"), string_field(e, "from", "edge"),
                          string_field(e, "to", "edge")});
  }
  for (const auto& p : array_field(doc, "pairs", top)) {
    if (!p.is_object()) throw ParseError("instance: pairs must be objects");
    desc.pairs.push_back({string_field(p, "source", "pair"), string_field(p, "target", "pair")});
  }

  const json& coding = field(doc, "coding", top);
  if (!coding.is_object()) throw ParseError("instance: \"coding\" must be an object keyed by node id");
  for (const auto& [name, _] : coding.items()) {
    if (std::find(desc.nodes.begin(), desc.nodes.end(), name) == desc.nodes.end()) {
      throw ValidationError("coding entry for unknown node \"" + name + "\"");
    }
  }
  std::vector<const json*> node_outputs;
  for (const auto& name : desc.nodes) {
    auto it = coding.find(name);
    if (it == coding.end()) throw ValidationError("node " + name + " has no coding entry");
    const std::string ctx = "coding of node " + name;
    if (!it->is_object()) throw ParseError(ctx + ": must be an object");
    std::vector<std::string> ins;
    for (const auto& e : array_field(*it, "inputs", ctx)) {
      if (!e.is_string()) throw ParseError(ctx + ": input edge ids must be strings");
      ins.push_back(e.get<std::string>());
    }
    std::vector<std::string> outs;
    const json& outputs = array_field(*it, "outputs", ctx);
    for (const auto& o : outputs) {
      if (!o.is_object()) throw ParseError(ctx + ": outputs must be objects");
      outs.push_back(string_field(o, "edge", ctx));
    }
    desc.inputs.push_back(std::move(ins));
    desc.outputs.push_back(std::move(outs));
    node_outputs.push_back(&outputs);
  }

  Network net = Network::build(desc);

  std::vector<NodeCoding> nodes(net.node_count());
  for (std::size_t v = 0; v < net.node_count(); ++v) {
    const std::size_t m = net.fan_in(static_cast<int>(v));
    for (const auto& o : *node_outputs[v]) {
      const std::string edge = o.at("edge").get<std::string>();
      const std::string ctx = "scheme shape mismatch at node " + desc.nodes[v] + ", output " + edge;
      const json& coeffs = field(o, "coeffs", ctx);
      if (!coeffs.is_array() || coeffs.size() != m) {
        throw ValidationError(ctx + ": expected " + std::to_string(m) + " coefficients");
      }
      std::vector<RingMatrix> row;
      for (std::size_t j = 0; j < m; ++j) {
        auto mat = parse_matrix(coeffs[j], *ring, q);
        if (!mat) {
          throw ValidationError(ctx + ": coefficient " + std::to_string(j + 1) + " (" +
                                coeffs[j].dump() + ") is not a " + std::to_string(q) + "x" +
                                std::to_string(q) + " matrix over " + ring->spec().descriptor());
        }
        row.push_back(std::move(*mat));
      }
      nodes[v].coeffs.push_back(std::move(row));
    }
  }

  CodingScheme scheme(ring, q, std::move(nodes));
  validate_scheme(net, scheme);
  return Instance{std::move(net), std::move(scheme)};
}

Instance load_instance(const std::filesystem::path& path, PhiChoice phi) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read instance file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str(), phi);
}

}  // namespace qnc
