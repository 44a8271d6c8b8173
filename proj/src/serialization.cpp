// Copyright 2026 The nvpf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nvpf/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>
#include <type_traits>

namespace nvpf {

namespace {

void require_object(const Json& j, std::string_view what) {
  if (!j.is_object()) throw SchemaError(std::string(what) + ": expected a JSON object");
}

void reject_unknown(const Json& j, std::string_view what,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw SchemaError(std::string(what) + ": unknown field \"" + key + "\"");
  }
}

double get_number(const Json& j, const char* key, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string(what) + ": missing field \"" + key + "\"");
  if (!it->is_number())
    throw SchemaError(std::string(what) + ": field \"" + key + "\" must be a number");
  return it->get<double>();
}

template <typename T>
void read_optional(const Json& j, const char* key, T& out, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end()) return;
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (!it->is_boolean()) throw SchemaError("");
    } else if constexpr (std::is_integral_v<T>) {
      if (!it->is_number_integer()) throw SchemaError("");
    } else {
      if (!it->is_number()) throw SchemaError("");
    }
    out = it->get<T>();
  } catch (const std::exception&) {
    throw SchemaError(std::string(what) + ": field \"" + key + "\" has the wrong type");
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

Json sequence_to_json(const PulseSequence& seq) {
  Json j = Json::object();
  j["rabi_mhz"] = seq.rabi_mhz;
  if (seq.rabi_range_mhz)
    j["rabi_range_mhz"] = Json::array({seq.rabi_range_mhz->lo_mhz, seq.rabi_range_mhz->hi_mhz});
  j["lead_delay_us"] = seq.lead_delay_us;
  Json segs = Json::array();
  for (const auto& s : seq.segments)
    segs.push_back({{"pulse_us", s.pulse_us}, {"phase_deg", s.phase_deg},
                    {"post_delay_us", s.post_delay_us}});
  j["segments"] = std::move(segs);
  return j;
}

namespace {

PulseSequence sequence_fields(const Json& j) {
  constexpr std::string_view what = "sequence";
  PulseSequence seq;
  seq.rabi_mhz = get_number(j, "rabi_mhz", what);
  seq.lead_delay_us = get_number(j, "lead_delay_us", what);
  if (const auto it = j.find("rabi_range_mhz"); it != j.end()) {
    if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number())
      throw SchemaError("sequence: rabi_range_mhz must be [lo, hi]");
    seq.rabi_range_mhz = RabiRange{(*it)[0].get<double>(), (*it)[1].get<double>()};
  }
  const auto it = j.find("segments");
  if (it == j.end() || !it->is_array()) throw SchemaError("sequence: segments must be an array");
  for (const auto& s : *it) {
    require_object(s, "segment");
    reject_unknown(s, "segment", {"pulse_us", "phase_deg", "post_delay_us"});
    seq.segments.push_back({get_number(s, "pulse_us", "segment"),
                            get_number(s, "phase_deg", "segment"),
                            get_number(s, "post_delay_us", "segment")});
  }
  try {
    validate_sequence(seq);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("sequence: ") + e.what());
  }
  return seq;
}

}  // namespace

PulseSequence sequence_from_json(const Json& j) {
  require_object(j, "sequence");
  reject_unknown(j, "sequence", {"rabi_mhz", "rabi_range_mhz", "lead_delay_us", "segments"});
  return sequence_fields(j);
}

Json target_to_json(const TargetSpec& target,
                    const std::optional<std::vector<CarbonCoupling>>& couplings) {
  Json j = Json::object();
  if (const auto* g = std::get_if<GroverTarget>(&target.kind)) {
    j["kind"] = "grover";
    j["n_qubits"] = g->n_qubits;
    j["target_index"] = g->target_index;
    j["iterations"] = g->iterations;
    j["include_prep"] = g->include_prep;
  } else if (const auto* c = std::get_if<ControlledRxTarget>(&target.kind)) {
    j["kind"] = "controlled_rx";
    j["n_carbons"] = c->n_carbons;
    j["j"] = c->j;
  } else {
    throw SchemaError("target: custom matrices have no JSON form");
  }
  if (!target.name.empty()) j["name"] = target.name;
  if (couplings) {
    Json arr = Json::array();
    for (const auto& c : *couplings) arr.push_back({{"a_zz", c.a_zz}, {"a_zx", c.a_zx}});
    j["couplings"] = std::move(arr);
  }
  return j;
}

TargetFile target_from_json(const Json& j) {
  constexpr std::string_view what = "target";
  require_object(j, what);
  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw SchemaError("target: missing \"kind\"");
  TargetFile out;
  const std::string k = kind->get<std::string>();
  if (k == "grover") {
    reject_unknown(j, what,
                   {"kind", "n_qubits", "target_index", "iterations", "include_prep", "name",
                    "couplings"});
    GroverTarget g;
    read_optional(j, "n_qubits", g.n_qubits, what);
    read_optional(j, "target_index", g.target_index, what);
    read_optional(j, "iterations", g.iterations, what);
    read_optional(j, "include_prep", g.include_prep, what);
    out.target.kind = g;
  } else if (k == "controlled_rx") {
    reject_unknown(j, what, {"kind", "n_carbons", "j", "name", "couplings"});
    ControlledRxTarget c;
    read_optional(j, "n_carbons", c.n_carbons, what);
    read_optional(j, "j", c.j, what);
    out.target.kind = c;
  } else {
    throw SchemaError("target: unknown kind \"" + k + "\"");
  }
  if (const auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw SchemaError("target: name must be a string");
    out.target.name = it->get<std::string>();
  }
  if (const auto it = j.find("couplings"); it != j.end()) {
    if (!it->is_array() || it->empty()) throw SchemaError("target: couplings must be an array");
    std::vector<CarbonCoupling> cs;
    for (const auto& c : *it) {
      require_object(c, "coupling");
      reject_unknown(c, "coupling", {"a_zz", "a_zx"});
      cs.push_back({get_number(c, "a_zz", "coupling"), get_number(c, "a_zx", "coupling")});
    }
    out.couplings = std::move(cs);
  }
  try {
    (void)target_unitary(out.target);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("target: ") + e.what());
  }
  if (out.target.name.empty()) out.target.name = default_target_name(out.target);
  if (out.couplings && static_cast<int>(out.couplings->size()) != target_carbon_count(out.target))
    throw SchemaError("target: couplings count does not match the target");
  return out;
}

Json sequence_file_to_json(const SequenceFile& f) {
  Json j = sequence_to_json(f.sequence);
  if (f.name) j["name"] = *f.name;
  if (f.target) j["target"] = target_to_json(f.target->target, f.target->couplings);
  if (f.published_fidelity) j["published_fidelity"] = *f.published_fidelity;
  return j;
}

SequenceFile sequence_file_from_json(const Json& j) {
  require_object(j, "sequence");
  reject_unknown(j, "sequence",
                 {"rabi_mhz", "rabi_range_mhz", "lead_delay_us", "segments", "name", "target",
                  "published_fidelity"});
  SequenceFile f;
  f.sequence = sequence_fields(j);
  if (const auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw SchemaError("sequence: name must be a string");
    f.name = it->get<std::string>();
  }
  if (const auto it = j.find("target"); it != j.end()) f.target = target_from_json(*it);
  if (j.contains("published_fidelity"))
    f.published_fidelity = get_number(j, "published_fidelity", "sequence");
  return f;
}

Json ga_config_to_json(const GAConfig& c) {
  return Json{{"population_size", c.population_size},
              {"max_generations", c.max_generations},
              {"crossover_rate", c.crossover_rate},
              {"mutation_rate", c.mutation_rate},
              {"mutation_sigma", c.mutation_sigma},
              {"elite_count", c.elite_count},
              {"tournament_size", c.tournament_size},
              {"target_fitness", c.target_fitness},
              {"seed", c.seed},
              {"restart_after", c.restart_after}};
}

GAConfig ga_config_from_json(const Json& j) {
  constexpr std::string_view what = "ga config";
  require_object(j, what);
  reject_unknown(j, what,
                 {"population_size", "max_generations", "crossover_rate", "mutation_rate",
                  "mutation_sigma", "elite_count", "tournament_size", "target_fitness", "seed",
                  "restart_after"});
  GAConfig c;
  read_optional(j, "population_size", c.population_size, what);
  read_optional(j, "max_generations", c.max_generations, what);
  read_optional(j, "crossover_rate", c.crossover_rate, what);
  read_optional(j, "mutation_rate", c.mutation_rate, what);
  read_optional(j, "mutation_sigma", c.mutation_sigma, what);
  read_optional(j, "elite_count", c.elite_count, what);
  read_optional(j, "tournament_size", c.tournament_size, what);
  read_optional(j, "target_fitness", c.target_fitness, what);
  read_optional(j, "restart_after", c.restart_after, what);
  if (const auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
      throw SchemaError("ga config: seed must be a non-negative integer");
    c.seed = it->get<std::uint64_t>();
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  }
  return c;
}

Json optimization_result_to_json(const OptimizationResult& r) {
  return Json{{"best_params", r.best_params},
              {"best_fitness", r.best_fitness},
              {"trace", r.trace},
              {"generations_run", r.generations_run},
              {"evaluations", r.evaluations},
              {"restarts", r.restarts}};
}

std::string trace_csv(const OptimizationResult& r) {
  std::string out = "generation,best_fitness\n";
  for (std::size_t g = 0; g < r.trace.size(); ++g)
    out += std::to_string(g) + "," + format_number(r.trace[g]) + "\n";
  return out;
}

std::string verification_csv(const std::vector<VerificationRow>& rows) {
  std::string out = "name,computed,published,deviation,pass\n";
  for (const auto& r : rows)
    out += r.name + "," + format_number(r.computed) + "," + format_number(r.published) + "," +
           format_number(r.deviation) + "," + (r.pass ? "true" : "false") + "\n";
  return out;
}

Json catalog_entry_to_json(const CatalogEntry& e) {
  SequenceFile f;
  f.sequence = e.sequence;
  f.name = e.name;
  f.target = TargetFile{e.target, e.system.couplings};
  f.published_fidelity = e.published_fidelity;
  return sequence_file_to_json(f);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace nvpf
