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

#include "nvpf/ga_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace nvpf {

GeneKind gene_kind(int index) {
  if (index == 0) return GeneKind::Delay;
  switch ((index - 1) % 3) {
    case 0: return GeneKind::Pulse;
    case 1: return GeneKind::Phase;
    default: return GeneKind::Delay;
  }
}

PulseSequence decode_params(std::span<const double> params, int n_pulses, double rabi_mhz) {
  if (n_pulses < 0 || static_cast<int>(params.size()) != param_length(n_pulses))
    throw std::invalid_argument("parameter vector length must be 3n+1");
  PulseSequence seq;
  seq.rabi_mhz = rabi_mhz;
  seq.lead_delay_us = params[0];
  seq.segments.resize(n_pulses);
  for (int k = 0; k < n_pulses; ++k) {
    seq.segments[k].pulse_us = params[1 + 3 * k];
    seq.segments[k].phase_deg = params[2 + 3 * k];
    seq.segments[k].post_delay_us = params[3 + 3 * k];
  }
  return seq;
}

ParamVector encode_params(const PulseSequence& seq) {
  ParamVector v;
  v.reserve(param_length(seq.pulse_count()));
  v.push_back(seq.lead_delay_us);
  for (const auto& s : seq.segments) {
    v.push_back(s.pulse_us);
    v.push_back(s.phase_deg);
    v.push_back(s.post_delay_us);
  }
  return v;
}

ParameterBounds ParameterBounds::uniform(int n_pulses, Interval pulse, Interval delay) {
  ParameterBounds b;
  b.n_pulses = n_pulses;
  b.pulse_us.assign(std::max(n_pulses, 0), pulse);
  b.delay_us.assign(std::max(n_pulses + 1, 0), delay);
  return b;
}

void ParameterBounds::validate() const {
  if (n_pulses < 1) throw std::invalid_argument("bounds: need at least one pulse");
  if (static_cast<int>(pulse_us.size()) != n_pulses ||
      static_cast<int>(delay_us.size()) != n_pulses + 1)
    throw std::invalid_argument("bounds: interval count does not match the pulse count");
  auto check = [](const Interval& iv) {
    if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo >= 0.0 && iv.lo <= iv.hi))
      throw std::invalid_argument("bounds: intervals need 0 <= lo <= hi");
  };
  for (const auto& iv : pulse_us) check(iv);
  for (const auto& iv : delay_us) check(iv);
}

Interval ParameterBounds::gene_interval(int index) const {
  switch (gene_kind(index)) {
    case GeneKind::Phase: return {0.0, 360.0};
    case GeneKind::Pulse: return pulse_us[(index - 1) / 3];
    case GeneKind::Delay: return delay_us[index == 0 ? 0 : index / 3];
  }
  return {};
}

bool ParameterBounds::contains(std::span<const double> params) const {
  if (static_cast<int>(params.size()) != param_length(n_pulses)) return false;
  for (int i = 0; i < static_cast<int>(params.size()); ++i) {
    const Interval iv = gene_interval(i);
    const double v = params[i];
    if (gene_kind(i) == GeneKind::Phase) {
      if (!(v >= 0.0 && v < 360.0)) return false;
    } else if (!(v >= iv.lo && v <= iv.hi)) {
      return false;
    }
  }
  return true;
}

void GAConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("GA: population_size must be >= 2");
  if (max_generations < 0) throw std::invalid_argument("GA: max_generations must be >= 0");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw std::invalid_argument("GA: crossover_rate must lie in [0,1]");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0))
    throw std::invalid_argument("GA: mutation_rate must lie in [0,1]");
  if (!(mutation_sigma >= 0.0 && std::isfinite(mutation_sigma)))
    throw std::invalid_argument("GA: mutation_sigma must be >= 0");
  if (elite_count < 0 || elite_count > population_size)
    throw std::invalid_argument("GA: need population_size >= elite_count >= 0");
  if (tournament_size < 2) throw std::invalid_argument("GA: tournament_size must be >= 2");
  if (!(target_fitness >= 0.0 && target_fitness <= 1.0))
    throw std::invalid_argument("GA: target_fitness must lie in [0,1]");
  if (restart_after < 0) throw std::invalid_argument("GA: restart_after must be >= 0");
}

std::optional<int> OptimizationResult::generations_to(double threshold) const {
  for (std::size_t g = 0; g < trace.size(); ++g)
    if (trace[g] >= threshold) return static_cast<int>(g);
  return std::nullopt;
}

namespace {

// Gains smaller than this over `restart_after` generations count as stagnation.
constexpr double kImprovementTol = 1e-3;

class Breeder {
 public:
  Breeder(const ParameterBounds& bounds, const GAConfig& config)
      : bounds_(bounds), config_(config), rng_(config.seed) {}

  ParamVector random_individual() {
    ParamVector v(param_length(bounds_.n_pulses));
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      const Interval iv = bounds_.gene_interval(i);
      if (gene_kind(i) == GeneKind::Phase) {
        v[i] = normalize_phase_deg(uniform_(rng_) * 360.0);
      } else {
        v[i] = iv.lo + uniform_(rng_) * iv.width();
      }
    }
    return v;
  }

  std::size_t tournament(const std::vector<double>& fitness) {
    std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
    std::size_t best = pick(rng_);
    for (int k = 1; k < config_.tournament_size; ++k) {
      const std::size_t c = pick(rng_);
      if (fitness[c] > fitness[best] || (fitness[c] == fitness[best] && c < best)) best = c;
    }
    return best;
  }

  void crossover(ParamVector& a, ParamVector& b) {
    if (uniform_(rng_) >= config_.crossover_rate) return;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (uniform_(rng_) < 0.5) std::swap(a[i], b[i]);
  }

  void mutate(ParamVector& v) {
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      if (uniform_(rng_) >= config_.mutation_rate) continue;
      const Interval iv = bounds_.gene_interval(i);
      const double step = normal_(rng_) * config_.mutation_sigma * iv.width();
      if (gene_kind(i) == GeneKind::Phase) {
        v[i] = normalize_phase_deg(v[i] + step);
      } else {
        v[i] = std::clamp(v[i] + step, iv.lo, iv.hi);
      }
    }
  }

 private:
  const ParameterBounds& bounds_;
  const GAConfig& config_;
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Evaluations touch no shared state, so they may run in any order.
void evaluate(const Objective& objective, const std::vector<ParamVector>& pop,
              std::vector<double>& fitness, std::size_t first, long& evaluations) {
  const long n = static_cast<long>(pop.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = static_cast<long>(first); i < n; ++i) {
    const double f = objective(pop[i]);
    fitness[i] = std::isfinite(f) ? f : 0.0;
  }
  evaluations += n - static_cast<long>(first);
}

}  // namespace

OptimizationResult optimize(const Objective& objective, const ParameterBounds& bounds,
                            const GAConfig& config, const GenerationObserver& observer) {
  bounds.validate();
  config.validate();
  if (!objective) throw std::invalid_argument("GA: empty objective");

  Breeder breeder(bounds, config);
  const std::size_t n = static_cast<std::size_t>(config.population_size);
  const std::size_t elites = static_cast<std::size_t>(config.elite_count);

  OptimizationResult result;
  std::vector<ParamVector> pop(n);
  for (auto& ind : pop) ind = breeder.random_individual();
  std::vector<double> fitness(n, 0.0);
  evaluate(objective, pop, fitness, 0, result.evaluations);
  if (observer) observer(0, pop);

  std::vector<std::size_t> order(n);
  auto rank = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
  };
  // Best-so-far bookkeeping keeps the trace monotone even without elites.
  auto record = [&] {
    rank();
    if (result.best_params.empty() || fitness[order[0]] > result.best_fitness) {
      result.best_fitness = fitness[order[0]];
      result.best_params = pop[order[0]];
    }
    result.trace.push_back(result.best_fitness);
  };
  record();

  int generation = 0;
  int last_improvement = 0;
  double last_improvement_fitness = result.best_fitness;
  while (generation < config.max_generations && result.best_fitness < config.target_fitness) {
    std::vector<ParamVector> next;
    std::vector<double> next_fitness;
    next.reserve(n);
    next_fitness.reserve(n);
    for (std::size_t k = 0; k < elites; ++k) {
      next.push_back(pop[order[k]]);
      next_fitness.push_back(fitness[order[k]]);
    }
    while (next.size() < n) {
      ParamVector a = pop[breeder.tournament(fitness)];
      ParamVector b = pop[breeder.tournament(fitness)];
      breeder.crossover(a, b);
      breeder.mutate(a);
      breeder.mutate(b);
      next.push_back(std::move(a));
      if (next.size() < n) next.push_back(std::move(b));
    }
    next_fitness.resize(n, 0.0);
    evaluate(objective, next, next_fitness, elites, result.evaluations);
    pop = std::move(next);
    fitness = std::move(next_fitness);
    ++generation;
    if (observer) observer(generation, pop);
    record();

    // A population that has collapsed into one basin is reseeded; the best
    // individual found so far stays in the result.
    if (result.best_fitness > last_improvement_fitness + kImprovementTol) {
      last_improvement_fitness = result.best_fitness;
      last_improvement = generation;
    } else if (config.restart_after > 0 && generation - last_improvement >= config.restart_after &&
               generation < config.max_generations) {
      for (auto& ind : pop) ind = breeder.random_individual();
      evaluate(objective, pop, fitness, 0, result.evaluations);
      rank();
      last_improvement = generation;
      ++result.restarts;
    }
  }
  result.generations_run = generation;
  return result;
}

SpinRegister default_register(const TargetSpec& target, const NVParams& params) {
  const int n = target_carbon_count(target);
  const auto table = published_couplings();
  if (n < 1 || n > static_cast<int>(table.size()))
    throw std::invalid_argument("no default register for a target on " + std::to_string(n) +
                                " carbons");
  SpinRegister reg;
  reg.params = params;
  reg.couplings.assign(table.begin(), table.begin() + n);
  return reg;
}

Objective make_sequence_objective(const TargetSpec& target, int n_pulses,
                                  const SpinRegister& system, double rabi_mhz,
                                  std::optional<RobustSampling> robust) {
  if (n_pulses < 1) throw std::invalid_argument("objective needs at least one pulse");
  auto u_target = std::make_shared<const OperatorMatrix>(target_unitary(target));
  if (u_target->rows() != system.dim())
    throw std::invalid_argument("target dimension does not match the register");
  auto prop = std::make_shared<const SequencePropagator>(system.propagator());
  std::vector<double> grid =
      robust ? rabi_grid(robust->range.lo_mhz, robust->range.hi_mhz, robust->n_samples)
             : std::vector<double>{rabi_mhz};

  return [u_target, prop, grid, n_pulses, rabi_mhz](std::span<const double> params) {
    const PulseSequence seq = decode_params(params, n_pulses, rabi_mhz);
    double sum = 0.0;
    for (double r : grid) sum += gate_fidelity(prop->unitary(seq, r), *u_target);
    return sum / static_cast<double>(grid.size());
  };
}

}  // namespace nvpf
