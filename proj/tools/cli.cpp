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

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnc/error.hpp"
#include "qnc/network.hpp"
#include "qnc/protocol.hpp"
#include "qnc/state_vector.hpp"

namespace qnc::cli {
namespace {

using nlohmann::ordered_json;

constexpr double kFidelityTolerance = 1e-9;

const char* kBranchHelp =
    "Forced branches list one outcome label per measurement, nodes in topological order and "
    "each node's input edges in order. Give them as a digit string (\"000000000\") when every "
    "label is below 10, or as comma-separated integers. A label is the base-|R| number whose "
    "most significant digit is the first vector entry.";

struct Config {
  std::string command;
  std::string instance;
  std::string input;
  std::string branch;
  std::string format = "text";
  std::optional<std::uint64_t> seed;
  bool prune = false;
  bool copy_skip = false;
  bool skip_check = false;
  bool alt_phi = false;
  std::size_t max_dim = kDefaultMaxAmplitudes;
  std::uint64_t max_inputs = kDefaultVerifyCap;
  std::uint64_t max_branches = kDefaultBranchCap;
  unsigned threads = 1;
};

std::string fixed12(double x) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(12) << x;
  return os.str();
}

std::string elem_str(const RingElem& e) {
  const auto c = e.coords();
  if (c.size() == 1) return std::to_string(c.front());
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

ordered_json vector_json(const RingVector& v) {
  const auto flat = v.flat_coords();
  if (flat.size() == 1) return flat.front();
  return ordered_json(flat);
}

std::string tuple_str(const std::vector<RingVector>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i].str();
  return s + ")";
}

std::string row_str(const std::vector<RingMatrix>& row) {
  std::string s = "[";
  for (std::size_t i = 0; i < row.size(); ++i) s += (i ? ", " : "") + row[i].str();
  return s + "]";
}

std::vector<std::uint64_t> parse_integers(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError(std::string("empty entry in ") + what);
    item = item.substr(b, e - b + 1);
    if (item.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError(std::string("bad integer '") + item + "' in " + what);
    }
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw ParseError(std::string("empty ") + what);
  return out;
}

std::vector<std::uint64_t> parse_branch(const std::string& text, const Instance& inst,
                                        bool copy_skip) {
  std::vector<std::uint64_t> labels;
  if (text.find(',') != std::string::npos) {
    labels = parse_integers(text, "--branch");
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw ParseError(std::string("bad branch digit '") + c + "'");
      labels.push_back(static_cast<std::uint64_t>(c - '0'));
    }
  }
  const auto needed = measurement_count(inst, copy_skip);
  if (labels.size() != needed) {
    throw ParseError("branch has " + std::to_string(labels.size()) + " outcomes but the run makes " +
                     std::to_string(needed) + " measurements");
  }
  return labels;
}

std::string branch_str(const std::vector<std::uint64_t>& labels, std::uint64_t dim) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (dim <= 10) {
      s += static_cast<char>('0' + labels[i]);
    } else {
      s += (i ? "," : "") + std::to_string(labels[i]);
    }
  }
  return s;
}

struct LoadedInput {
  StateVector state;
  std::string description;
};

LoadedInput load_input(const Config& cfg, const Instance& inst, std::ostream& err) {
  const auto& ring = inst.scheme.ring_ptr();
  const std::size_t q = inst.scheme.q();
  const std::size_t k = inst.network.k();
  if (cfg.input.empty()) {
    auto s = uniform_state(ring, q, k);
    s.set_max_amplitudes(cfg.max_dim);
    return {std::move(s), "uniform superposition"};
  }
  if (std::filesystem::is_regular_file(cfg.input)) {
    auto s = load_input_state(cfg.input, ring, q, k, cfg.max_dim);
    if (s.renormalized()) err << "warning: input state was not normalized; renormalized\n";
    return {std::move(s), "file " + cfg.input};
  }
  const auto labels = parse_integers(cfg.input, "--input");
  if (labels.size() != k) {
    throw ParseError("--input needs " + std::to_string(k) + " basis labels, got " +
                     std::to_string(labels.size()));
  }
  std::vector<RegisterId> regs;
  for (std::size_t i = 0; i < k; ++i) regs.push_back(reg(static_cast<std::int32_t>(i)));
  return {StateVector::basis(ring, q, std::move(regs), labels, cfg.max_dim), "basis " + cfg.input};
}

ProtocolOptions protocol_options(const Config& cfg) {
  ProtocolOptions o;
  o.policy = cfg.prune ? RecipientPolicy::kPrune : RecipientPolicy::kBroadcast;
  o.copy_skip = cfg.copy_skip;
  o.skip_classical_check = cfg.skip_check;
  o.max_amplitudes = cfg.max_dim;
  o.verify_cap = cfg.max_inputs;
  return o;
}

ordered_json instance_header(const Config& cfg, const Instance& inst) {
  ordered_json j;
  j["instance"] = cfg.instance;
  j["ring"] = inst.scheme.ring().spec().descriptor();
  j["q"] = inst.scheme.q();
  j["k"] = inst.network.k();
  j["nodes"] = inst.network.node_count();
  j["edges"] = inst.network.real_edge_count();
  return j;
}

void print_header(std::ostream& out, const ordered_json& h) {
  out << "instance: " << h["instance"].get<std::string>() << "\n";
  out << "ring: " << h["ring"].get<std::string>() << "  q: " << h["q"] << "  k: " << h["k"]
      << "  nodes: " << h["nodes"] << "  edges: " << h["edges"] << "\n";
}

// verify

int cmd_verify(const Config& cfg, const Instance& inst, std::ostream& out) {
  const auto verdict = verify_solution(inst, cfg.max_inputs);
  const auto tmap = transfer_coefficients(inst);
  const Network& net = inst.network;
  ordered_json j = instance_header(cfg, inst);
  j["valid"] = verdict.valid;
  j["checked"] = verdict.checked;
  if (!verdict.valid) {
    ordered_json in = ordered_json::array(), res = ordered_json::array();
    for (const auto& v : verdict.counterexample_input) in.push_back(vector_json(v));
    for (const auto& v : verdict.counterexample_output) res.push_back(vector_json(v));
    j["counterexample"] = {{"input", in}, {"output", res}};
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const Edge& edge = net.edge(static_cast<int>(e));
    ordered_json gammas = ordered_json::array();
    for (const auto& g : tmap.row(static_cast<int>(e))) {
      std::vector<ordered_json> entries;
      for (std::size_t r = 0; r < g.dim(); ++r) {
        for (std::size_t c = 0; c < g.dim(); ++c) {
          const auto coords = g.at(r, c).coords();
          entries.push_back(coords.size() == 1 ? ordered_json(coords.front()) : ordered_json(coords));
        }
      }
      gammas.push_back(g.dim() == 1 ? entries.front() : ordered_json(entries));
    }
    rows.push_back({{"edge", edge.id}, {"gamma", gammas}});
  }
  j["transfer"] = rows;

  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    print_header(out, j);
    if (verdict.valid) {
      out << "solution: VALID\n";
    } else {
      out << "solution: INVALID (counterexample input " << tuple_str(verdict.counterexample_input)
          << " delivers " << tuple_str(verdict.counterexample_output) << ")\n";
    }
    out << "checked: " << verdict.checked << " input tuples\n";
    out << "transfer coefficients:\n";
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      const Edge& edge = net.edge(static_cast<int>(e));
      out << "  " << std::left << std::setw(8) << edge.id << std::right
          << row_str(tmap.row(static_cast<int>(e))) << "\n";
    }
  }
  return verdict.valid ? kExitOk : kExitViolation;
}

// simulate

ordered_json phase_rows(const PhaseTable& t) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < t.k(); ++i) {
    ordered_json row = ordered_json::array();
    for (const auto& p : t.h(i)) row.push_back(p.str());
    rows.push_back(row);
  }
  return rows;
}

int cmd_simulate(const Config& cfg, const Instance& inst, std::ostream& out, std::ostream& err) {
  auto input = load_input(cfg, inst, err);
  const auto opts = protocol_options(cfg);
  std::optional<OutcomeSource> source;
  std::string mode;
  if (!cfg.branch.empty()) {
    source = OutcomeSource::forced(parse_branch(cfg.branch, inst, cfg.copy_skip));
    mode = "forced";
  } else if (cfg.seed) {
    source = OutcomeSource::seeded(*cfg.seed);
    mode = "seed " + std::to_string(*cfg.seed);
  } else {
    throw ValidationError("simulate needs --seed or --branch");
  }
  const auto run = run_protocol(inst, input.state, *source, opts);
  const double fid = fidelity(input.state, run.output);
  const auto cost = classical_cost(run.log, inst);
  const Network& net = inst.network;
  const std::uint64_t dim = input.state.register_dim();
  const auto branch = run.log.branch();

  ordered_json j = instance_header(cfg, inst);
  j["input"] = input.description;
  j["mode"] = mode;
  j["policy"] = cfg.prune ? "prune" : "broadcast";
  j["branch"] = branch;
  ordered_json msgs = ordered_json::array();
  for (const auto& e : run.log.entries) {
    ordered_json outcomes = ordered_json::array();
    for (const auto& o : e.outcomes) {
      outcomes.push_back({{"edge", net.edge(id_of(o.reg)).id}, {"outcome", vector_json(o.outcome)}});
    }
    ordered_json to = ordered_json::array();
    for (auto r : e.recipients) to.push_back(net.node_name(net.pair(r).target));
    msgs.push_back({{"node", net.node_name(e.node)}, {"outcomes", outcomes}, {"recipients", to}});
  }
  j["messages"] = msgs;
  j["corrections"] = phase_rows(run.corrections);
  j["probability"] = run.probability;
  j["elements_sent"] = cost.elements_sent;
  j["bits_sent"] = cost.bits_sent;
  j["quantum_registers_sent"] = cost.quantum_registers_sent;
  j["fidelity"] = fid;

  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    print_header(out, j);
    out << "input: " << input.description << "\n";
    out << "mode: " << mode << "\n";
    out << "branch: " << branch_str(branch, dim) << "\n";
    out << "messages (" << j["policy"].get<std::string>() << "):\n";
    for (const auto& m : msgs) {
      out << "  " << m["node"].get<std::string>() << ":";
      for (const auto& o : m["outcomes"]) {
        out << " " << o["edge"].get<std::string>() << "=" << o["outcome"].dump();
      }
      out << " ->";
      for (const auto& r : m["recipients"]) out << " " << r.get<std::string>();
      out << "\n";
    }
    out << "corrections:\n";
    for (std::size_t i = 0; i < run.corrections.k(); ++i) {
      out << "  h_" << (i + 1) << ":";
      for (const auto& p : run.corrections.h(i)) out << " " << p.str();
      out << "\n";
    }
    out << "probability: " << fixed12(run.probability) << "\n";
    out << "classical cost: " << cost.elements_sent << " elements / " << cost.bits_sent
        << " bits\n";
    out << "quantum registers sent: " << cost.quantum_registers_sent << "\n";
    out << "fidelity: " << fixed12(fid) << "\n";
  }
  return fid >= 1.0 - kFidelityTolerance ? kExitOk : kExitViolation;
}

// enumerate

int cmd_enumerate(const Config& cfg, const Instance& inst, std::ostream& out, std::ostream& err) {
  auto input = load_input(cfg, inst, err);
  auto opts = protocol_options(cfg);
  bool valid = true;
  if (!opts.skip_classical_check) {
    valid = verify_solution(inst, cfg.max_inputs).valid;
    if (!valid) err << "warning: the coding scheme is not a classical solution\n";
    opts.skip_classical_check = true;
  }
  const auto summary = enumerate_branches(inst, input.state, opts, cfg.max_branches, cfg.threads);
  const bool perfect =
      summary.worst.has_value() && summary.min_fidelity >= 1.0 - kFidelityTolerance;

  ordered_json j = instance_header(cfg, inst);
  j["input"] = input.description;
  if (!cfg.skip_check) j["classical_solution"] = valid;
  j["branches"] = summary.branches;
  j["impossible"] = summary.impossible;
  j["min_fidelity"] = summary.min_fidelity;
  j["max_fidelity"] = summary.max_fidelity;
  j["total_probability"] = summary.total_probability;
  if (summary.worst && !perfect) {
    j["worst"] = {{"index", summary.worst->index},
                  {"branch", summary.worst->outcomes},
                  {"fidelity", summary.worst->fidelity}};
  }

  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    print_header(out, j);
    out << "input: " << input.description << "\n";
    out << summary.branches << " branches, min fidelity " << fixed12(summary.min_fidelity) << "\n";
    out << "max fidelity: " << fixed12(summary.max_fidelity) << "\n";
    out << "impossible branches: " << summary.impossible << "\n";
    out << "total probability: " << fixed12(summary.total_probability) << "\n";
    if (summary.worst && !perfect) {
      out << "worst branch: "
          << branch_str(summary.worst->outcomes, input.state.register_dim()) << " (index "
          << summary.worst->index << ")\n";
    }
  }
  return perfect ? kExitOk : kExitViolation;
}

// cost

int cmd_cost(const Config& cfg, const Instance& inst, std::ostream& out) {
  const auto input = uniform_state(inst.scheme.ring_ptr(), inst.scheme.q(), inst.network.k());
  auto opts = protocol_options(cfg);
  opts.skip_classical_check = true;
  auto measure = [&](RecipientPolicy policy) {
    opts.policy = policy;
    auto src = OutcomeSource::seeded(0);
    return classical_cost(run_protocol(inst, input, src, opts).log, inst);
  };
  const auto broadcast = measure(RecipientPolicy::kBroadcast);
  const auto prune = measure(RecipientPolicy::kPrune);
  const Network& net = inst.network;
  const std::uint32_t bits_per = ceil_log2(inst.scheme.ring().size());

  ordered_json j = instance_header(cfg, inst);
  j["M"] = broadcast.max_fan_in;
  j["V"] = broadcast.node_count;
  j["bits_per_element"] = bits_per;
  j["bound_elements"] = broadcast.bound_elements;
  j["bound_bits"] = broadcast.bound_bits;
  j["broadcast_elements"] = broadcast.elements_sent;
  j["broadcast_bits"] = broadcast.bits_sent;
  j["prune_elements"] = prune.elements_sent;
  j["prune_bits"] = prune.bits_sent;
  j["quantum_registers_sent"] = broadcast.quantum_registers_sent;
  ordered_json nodes = ordered_json::array();
  for (std::size_t v = 0; v < broadcast.nodes.size(); ++v) {
    const auto& b = broadcast.nodes[v];
    nodes.push_back({{"node", net.node_name(b.node)},
                     {"fan_in", b.fan_in},
                     {"fan_out", b.fan_out},
                     {"copy", b.copy},
                     {"nontrivial_coefficients", b.nontrivial_coefficients},
                     {"broadcast_elements", b.elements_sent},
                     {"prune_elements", prune.nodes[v].elements_sent}});
  }
  j["per_node"] = nodes;

  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    print_header(out, j);
    out << "k: " << broadcast.k << "\nM: " << broadcast.max_fan_in
        << "\n|V|: " << broadcast.node_count << "\n";
    out << "bits per element: " << bits_per << "\n";
    out << "bound: " << broadcast.bound_elements << " elements / " << broadcast.bound_bits
        << " bits\n";
    out << "broadcast: " << broadcast.elements_sent << " elements / " << broadcast.bits_sent
        << " bits\n";
    out << "prune: " << prune.elements_sent << " elements / " << prune.bits_sent << " bits\n";
    out << "quantum registers sent: " << broadcast.quantum_registers_sent << "\n";
    out << "node      fan-in  fan-out  copy  broadcast  prune\n";
    for (const auto& n : nodes) {
      out << std::left << std::setw(10) << n["node"].get<std::string>() << std::setw(8)
          << n["fan_in"].dump() << std::setw(9) << n["fan_out"].dump() << std::setw(6)
          << (n["copy"].get<bool>() ? "yes" : "no") << std::setw(11)
          << n["broadcast_elements"].dump() << n["prune_elements"].dump() << std::right << "\n";
    }
  }
  return kExitOk;
}

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("instance", cfg.instance, "Instance JSON file")->required();
  sub->add_flag("--alt-phi", cfg.alt_phi, "Use the alternate additive isomorphism");
  sub->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  sub->add_option("--max-inputs", cfg.max_inputs, "Cap on input tuples for classical checks")
      ->capture_default_str();
}

void add_run_options(CLI::App* sub, Config& cfg) {
  sub->add_flag("--prune", cfg.prune, "Send outcomes only to targets that depend on them");
  sub->add_flag("--copy-skip", cfg.copy_skip, "Forward registers through copy nodes");
  sub->add_flag("--skip-classical-check", cfg.skip_check, "Do not verify the scheme first");
  sub->add_option("--max-dim", cfg.max_dim, "Cap on state-vector amplitudes")
      ->capture_default_str();
}

int report_error(std::ostream& err, const std::string& msg, int code) {
  err << "error: " << msg << "\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"qnc: perfect quantum network coding simulator", "qnc"};
  app.require_subcommand(1);
  app.footer(kBranchHelp);

  auto* verify = app.add_subcommand("verify", "Check the scheme classically and print transfer coefficients");
  add_common(verify, cfg);

  auto* simulate = app.add_subcommand("simulate", "Run the protocol once");
  add_common(simulate, cfg);
  add_run_options(simulate, cfg);
  simulate->add_option("--input", cfg.input,
                       "Comma-separated basis labels or an input-state JSON file "
                       "(default: uniform superposition)");
  simulate->add_option("--seed", cfg.seed, "Seed for sampled measurements");
  simulate->add_option("--branch", cfg.branch, "Forced measurement outcomes");

  auto* enumerate = app.add_subcommand("enumerate", "Run every measurement branch");
  add_common(enumerate, cfg);
  add_run_options(enumerate, cfg);
  enumerate->add_option("--input", cfg.input,
                        "Comma-separated basis labels or an input-state JSON file "
                        "(default: uniform superposition)");
  enumerate->add_option("--max-branches", cfg.max_branches, "Cap on enumerated branches")
      ->capture_default_str();
  enumerate->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* cost = app.add_subcommand("cost", "Report classical and quantum communication cost");
  add_common(cost, cfg);
  add_run_options(cost, cfg);

  std::vector<const char*> argv{"qnc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, e.what(), kExitInputError);
  }

  try {
    const auto inst =
        load_instance(cfg.instance, cfg.alt_phi ? PhiChoice::kAlternate : PhiChoice::kCanonical);
    if (verify->parsed()) return cmd_verify(cfg, inst, out);
    if (simulate->parsed()) return cmd_simulate(cfg, inst, out, err);
    if (enumerate->parsed()) return cmd_enumerate(cfg, inst, out, err);
    return cmd_cost(cfg, inst, out);
  } catch (const SchemeInvalid& e) {
    return report_error(err, e.what(), kExitViolation);
  } catch (const CapExceeded& e) {
    return report_error(err, std::string(e.what()) + "; raise the limit with " + e.override_hint(),
                        kExitInputError);
  } catch (const ParseError& e) {
    return report_error(err, e.what(), kExitInputError);
  } catch (const ValidationError& e) {
    return report_error(err, e.what(), kExitInputError);
  } catch (const RingMismatch& e) {
    return report_error(err, e.what(), kExitInputError);
  } catch (const StateError& e) {
    return report_error(err, e.what(), kExitInputError);
  }
}

}  // namespace qnc::cli
