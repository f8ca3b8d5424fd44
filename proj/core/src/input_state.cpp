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

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qnc/error.hpp"
#include "qnc/state_vector.hpp"

namespace qnc {
namespace {

using nlohmann::json;

void flatten(const json& j, std::vector<std::int64_t>& out) {
  if (j.is_array()) {
    for (const auto& x : j) flatten(x, out);
  } else if (j.is_number_integer() || j.is_number_unsigned()) {
    out.push_back(j.get<std::int64_t>());
  } else {
    throw ParseError("input state label entries must be integers");
  }
}

std::size_t checked_dim(const Ring& ring, std::size_t q, std::size_t k, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < q * k; ++i) {
    if (total > cap / ring.size()) {
      throw CapExceeded("input state exceeds the amplitude cap of " + std::to_string(cap),
                        "--max-dim");
    }
    total *= ring.size();
  }
  return total;
}

}  // namespace

StateVector uniform_state(RingPtr ring, std::size_t q, std::size_t k) {
  const std::size_t total = checked_dim(*ring, q, k, kDefaultMaxAmplitudes);
  std::vector<StateVector::Amplitude> amps(total, 1.0 / std::sqrt(static_cast<double>(total)));
  return init_state(std::move(ring), q, k, std::move(amps));
}

StateVector parse_input_state(std::string_view json_text, RingPtr ring, std::size_t q,
                              std::size_t k, std::size_t max_amplitudes) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("input state: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) throw ParseError("input state must be a non-empty list");
  const std::size_t total = checked_dim(*ring, q, k, max_amplitudes);
  const std::size_t ell = ring->coord_count();
  const auto moduli = ring->moduli();
  std::vector<StateVector::Amplitude> amps(total);
  for (const auto& entry : doc) {
    if (!entry.is_array() || entry.size() != 3 || !entry[1].is_number() || !entry[2].is_number()) {
      throw ParseError("input state entries must be [label, re, im]");
    }
    std::vector<std::int64_t> flat;
    flatten(entry[0], flat);
    if (flat.size() != k * q * ell) {
      throw ParseError("input state label needs " + std::to_string(k * q * ell) +
                       " coordinates, got " + std::to_string(flat.size()));
    }
    std::uint64_t index = 0;
    std::vector<std::uint32_t> coords(ell);
    for (std::size_t e = 0; e < k * q; ++e) {
      for (std::size_t c = 0; c < ell; ++c) {
        const auto v = flat[e * ell + c];
        if (v < 0 || static_cast<std::uint64_t>(v) >= moduli[c]) {
          throw ParseError("input state coordinate " + std::to_string(v) + " out of range");
        }
        coords[c] = static_cast<std::uint32_t>(v);
      }
      index = index * ring->size() + ring->index_of(coords);
    }
    amps[index] += StateVector::Amplitude(entry[1].get<double>(), entry[2].get<double>());
  }
  std::vector<RegisterId> regs;
  for (std::size_t i = 0; i < k; ++i) regs.push_back(reg(static_cast<std::int32_t>(i)));
  return StateVector::from_amplitudes(std::move(ring), q, std::move(regs), std::move(amps),
                                      max_amplitudes);
}

StateVector load_input_state(const std::filesystem::path& path, RingPtr ring, std::size_t q,
                             std::size_t k, std::size_t max_amplitudes) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read input state " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input_state(buf.str(), std::move(ring), q, k, max_amplitudes);
}

}  // namespace qnc
