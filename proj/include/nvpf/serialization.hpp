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

#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nvpf/ga_optimizer.hpp"
#include "nvpf/grover_targets.hpp"
#include "nvpf/paperlab.hpp"
#include "nvpf/pulsesim.hpp"

namespace nvpf {

using Json = nlohmann::json;

/// Malformed or unexpected JSON input.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "%.9g".
std::string format_number(double v);

Json sequence_to_json(const PulseSequence& seq);
/// Strict reader: exact key names, unknown keys rejected.
PulseSequence sequence_from_json(const Json& j);

struct TargetFile {
  TargetSpec target;
  std::optional<std::vector<CarbonCoupling>> couplings;
};

Json target_to_json(const TargetSpec& target,
                    const std::optional<std::vector<CarbonCoupling>>& couplings = std::nullopt);
/// {"kind": "grover" | "controlled_rx", ...}. Custom targets are not serialized.
TargetFile target_from_json(const Json& j);

/// A sequence file may also carry "name", "target" and "published_fidelity".
struct SequenceFile {
  PulseSequence sequence;
  std::optional<std::string> name;
  std::optional<TargetFile> target;
  std::optional<double> published_fidelity;
};

Json sequence_file_to_json(const SequenceFile& f);
SequenceFile sequence_file_from_json(const Json& j);

Json ga_config_to_json(const GAConfig& c);
/// Every field is optional; missing fields keep their defaults.
GAConfig ga_config_from_json(const Json& j);

Json optimization_result_to_json(const OptimizationResult& r);
/// "generation,best_fitness" plus one row per trace entry.
std::string trace_csv(const OptimizationResult& r);

/// "name,computed,published,deviation,pass".
std::string verification_csv(const std::vector<VerificationRow>& rows);

/// Catalog entry in the sequence-file schema.
Json catalog_entry_to_json(const CatalogEntry& e);

/// Parses a file; throws SchemaError on I/O or parse failure.
Json read_json_file(const std::filesystem::path& path);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace nvpf
