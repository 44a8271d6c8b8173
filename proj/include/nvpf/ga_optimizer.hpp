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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nvpf/grover_targets.hpp"
#include "nvpf/pulsesim.hpp"

namespace nvpf {

// Parameter vectors use the layout [tau_0, t_1, phi_1, tau_1, ..., t_n, phi_n, tau_n]:
// delays and durations in microseconds, phases in degrees.
using ParamVector = std::vector<double>;
using Objective = std::function<double(std::span<const double>)>;

enum class GeneKind { Delay, Pulse, Phase };

GeneKind gene_kind(int index);
inline int param_length(int n_pulses) { return 3 * n_pulses + 1; }

PulseSequence decode_params(std::span<const double> params, int n_pulses, double rabi_mhz = 0.5);
ParamVector encode_params(const PulseSequence& seq);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

struct ParameterBounds {
  int n_pulses = 0;
  std::vector<Interval> pulse_us;  // one per pulse
  std::vector<Interval> delay_us;  // one per delay, n_pulses + 1

  /// Same interval for every pulse and every delay.
  static ParameterBounds uniform(int n_pulses, Interval pulse = {0.0, 4.0},
                                 Interval delay = {0.0, 6.0});
  void validate() const;
  bool contains(std::span<const double> params) const;
  Interval gene_interval(int index) const;
};

struct GAConfig {
  int population_size = 100;
  int max_generations = 1000;
  double crossover_rate = 0.9;
  double mutation_rate = 0.15;
  double mutation_sigma = 0.05;  // fraction of the gene's range
  int elite_count = 2;
  int tournament_size = 3;
  double target_fitness = 0.999;
  std::uint64_t seed = 1;
  int restart_after = 100;  // stagnant generations before reseeding; 0 disables

  void validate() const;
};

struct OptimizationResult {
  ParamVector best_params;
  double best_fitness = 0.0;
  std::vector<double> trace;  // trace[0]: initial population, trace[g]: after generation g
  int generations_run = 0;
  long evaluations = 0;
  int restarts = 0;

  /// First generation whose best fitness reaches `threshold`, if any.
  std::optional<int> generations_to(double threshold) const;
};

/// Optional hook invoked after every generation with (generation, population).
using GenerationObserver =
    std::function<void(int, const std::vector<ParamVector>&)>;

/// Elitist generational GA: tournament selection, uniform crossover and
/// Gaussian mutation (clipped for durations, wrapped for phases). Identical
/// seed, config and objective give bit-identical results. The objective must
/// be pure; it may be called concurrently.
OptimizationResult optimize(const Objective& objective, const ParameterBounds& bounds,
                            const GAConfig& config, const GenerationObserver& observer = {});

/// Default register for a target: the first n rows of the coupling table.
SpinRegister default_register(const TargetSpec& target, const NVParams& params = {});

/// Fidelity of a decoded parameter vector against the target, optionally
/// averaged over a Rabi grid.
Objective make_sequence_objective(const TargetSpec& target, int n_pulses,
                                  const SpinRegister& system, double rabi_mhz = 0.5,
                                  std::optional<RobustSampling> robust = std::nullopt);

}  // namespace nvpf
