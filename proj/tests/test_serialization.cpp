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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nvpf/serialization.hpp"

using namespace nvpf;

TEST_CASE("number formatting") {
  CHECK(format_number(0.970818627123) == "0.970818627");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(1.5e-12) == "1.5e-12");
}

TEST_CASE("sequence JSON uses the exact field names") {
  PulseSequence s;
  s.rabi_range_mhz = RabiRange{0.48, 0.52};
  s.lead_delay_us = 1.0;
  s.segments = {{0.5, 90.0, 2.0}};
  const Json j = sequence_to_json(s);
  CHECK(j.at("rabi_mhz") == 0.5);
  CHECK(j.at("rabi_range_mhz") == Json::array({0.48, 0.52}));
  CHECK(j.at("lead_delay_us") == 1.0);
  CHECK(j.at("segments")[0].at("pulse_us") == 0.5);
  CHECK(j.at("segments")[0].at("phase_deg") == 90.0);
  CHECK(j.at("segments")[0].at("post_delay_us") == 2.0);
  const PulseSequence back = sequence_from_json(j);
  CHECK(back.segments[0].phase_deg == 90.0);
  CHECK(back.rabi_range_mhz->hi_mhz == 0.52);
}

TEST_CASE("sequence JSON rejects malformed input") {
  Json base = sequence_to_json(PulseSequence{0.5, {}, 1.0, {{0.5, 0.0, 0.5}}});
  Json j = base;
  j["extra"] = 1;
  CHECK_THROWS_AS(sequence_from_json(j), SchemaError);
  j = base;
  j["segments"][0]["phase"] = 0.0;
  CHECK_THROWS_AS(sequence_from_json(j), SchemaError);
  j = base;
  j.erase("rabi_mhz");
  CHECK_THROWS_AS(sequence_from_json(j), SchemaError);
  j = base;
  j["lead_delay_us"] = "1.0";
  CHECK_THROWS_AS(sequence_from_json(j), SchemaError);
  j = base;
  j["lead_delay_us"] = -1.0;
  CHECK_THROWS_AS(sequence_from_json(j), SchemaError);
  j = base;
  j["rabi_range_mhz"] = Json::array({0.5});
  CHECK_THROWS_AS(sequence_from_json(j), SchemaError);
  CHECK_THROWS_AS(sequence_from_json(Json::array()), SchemaError);
  // The bare reader does not accept sequence-file extras.
  j = base;
  j["name"] = "x";
  CHECK_THROWS_AS(sequence_from_json(j), SchemaError);
  CHECK_NOTHROW(sequence_file_from_json(j));
}

TEST_CASE("every catalog entry round-trips exactly") {
  for (const auto& e : builtin_catalog()) {
    INFO(e.name);
    const std::string text = catalog_entry_to_json(e).dump();
    const SequenceFile f = sequence_file_from_json(Json::parse(text));
    CHECK(f.name == e.name);
    CHECK(f.published_fidelity == e.published_fidelity);
    CHECK(f.sequence.rabi_mhz == e.sequence.rabi_mhz);
    CHECK(f.sequence.lead_delay_us == e.sequence.lead_delay_us);
    CHECK(f.sequence.rabi_range_mhz.has_value() == e.sequence.rabi_range_mhz.has_value());
    REQUIRE(f.sequence.segments.size() == e.sequence.segments.size());
    for (std::size_t k = 0; k < f.sequence.segments.size(); ++k) {
      CHECK(f.sequence.segments[k].pulse_us == e.sequence.segments[k].pulse_us);
      CHECK(f.sequence.segments[k].phase_deg == e.sequence.segments[k].phase_deg);
      CHECK(f.sequence.segments[k].post_delay_us == e.sequence.segments[k].post_delay_us);
    }
    REQUIRE(f.target.has_value());
    CHECK(f.target->target.name == e.target.name);
    REQUIRE(f.target->couplings.has_value());
    CHECK(f.target->couplings->size() == e.system.couplings.size());
    CHECK(default_target_name(f.target->target) == default_target_name(e.target));
  }
}

TEST_CASE("target JSON") {
  const TargetFile g = target_from_json(Json{{"kind", "grover"}, {"target_index", 2}});
  const auto* gt = std::get_if<GroverTarget>(&g.target.kind);
  REQUIRE(gt != nullptr);
  CHECK(gt->target_index == 2);
  CHECK(gt->include_prep);
  CHECK(g.target.name == "grover_10");

  const TargetFile c = target_from_json(
      Json{{"kind", "controlled_rx"}, {"n_carbons", 2}, {"j", 1},
           {"couplings", Json::array({Json{{"a_zz", -0.1}, {"a_zx", 0.2}},
                                      Json{{"a_zz", -0.3}, {"a_zx", 0.4}}})}});
  REQUIRE(c.couplings.has_value());
  CHECK((*c.couplings)[1].a_zx == 0.4);

  CHECK_THROWS_AS(target_from_json(Json{{"kind", "qft"}}), SchemaError);
  CHECK_THROWS_AS(target_from_json(Json{{"kind", "grover"}, {"bogus", 1}}), SchemaError);
  CHECK_THROWS_AS(target_from_json(Json{{"kind", "grover"}, {"target_index", 9}}), SchemaError);
  CHECK_THROWS_AS(target_from_json(Json{{"kind", "grover"}, {"n_qubits", 2.5}}), SchemaError);
  CHECK_THROWS_AS(target_from_json(Json{{"kind", "controlled_rx"},
                                        {"couplings", Json::array({Json{{"a_zz", 0.0}, {"a_zx", 0.1}},
                                                                   Json{{"a_zz", 0.0}, {"a_zx", 0.1}}})}}),
                  SchemaError);

  const Json round = target_to_json(c.target, c.couplings);
  const TargetFile again = target_from_json(round);
  CHECK(std::get<ControlledRxTarget>(again.target.kind).n_carbons == 2);
}

TEST_CASE("GA config JSON") {
  GAConfig c;
  c.population_size = 40;
  c.seed = 12345678901234ULL;
  const GAConfig back = ga_config_from_json(ga_config_to_json(c));
  CHECK(back.population_size == 40);
  CHECK(back.seed == 12345678901234ULL);
  CHECK(back.mutation_sigma == c.mutation_sigma);
  const GAConfig partial = ga_config_from_json(Json{{"max_generations", 5}});
  CHECK(partial.max_generations == 5);
  CHECK(partial.population_size == 100);
  CHECK_THROWS_AS(ga_config_from_json(Json{{"population", 5}}), SchemaError);
  CHECK_THROWS_AS(ga_config_from_json(Json{{"tournament_size", 1}}), SchemaError);
  CHECK_THROWS_AS(ga_config_from_json(Json{{"seed", -3}}), SchemaError);
}

TEST_CASE("result exports") {
  OptimizationResult r;
  r.best_params = {1.0, 2.0};
  r.best_fitness = 0.5;
  r.trace = {0.25, 0.5};
  r.generations_run = 1;
  r.evaluations = 10;
  CHECK(trace_csv(r) == "generation,best_fitness\n0,0.25\n1,0.5\n");
  const Json j = optimization_result_to_json(r);
  CHECK(j.at("best_fitness") == 0.5);
  CHECK(j.at("evaluations") == 10);

  VerificationRow row;
  row.name = "fixed_00";
  row.computed = 0.990770429;
  row.published = 0.991;
  row.deviation = 0.000229571;
  row.pass = true;
  CHECK(verification_csv({row}) ==
        "name,computed,published,deviation,pass\nfixed_00,0.990770429,0.991,0.000229571,true\n");
}

TEST_CASE("atomic file writes and JSON reads") {
  const auto dir = std::filesystem::temp_directory_path() / "nvpf_serialization_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "a.json";
  write_file_atomic(path, "{\"x\": 1}");
  CHECK_FALSE(std::filesystem::exists(dir / "a.json.tmp"));
  CHECK(read_json_file(path).at("x") == 1);
  write_file_atomic(path, "{not json");
  CHECK_THROWS_AS(read_json_file(path), SchemaError);
  CHECK_THROWS_AS(read_json_file(dir / "missing.json"), SchemaError);
  std::filesystem::remove_all(dir);
}
