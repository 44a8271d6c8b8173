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

#include <cmath>
#include <initializer_list>
#include <stdexcept>

#include "nvpf/paperlab.hpp"

namespace nvpf {

namespace {

// Rows are listed as (post_delay, pulse, phase), the column order of the
// published tables.
struct Row {
  double delay;
  double pulse;
  double phase;
};

PulseSequence table(double rabi, double lead, std::initializer_list<Row> rows) {
  PulseSequence seq;
  seq.rabi_mhz = rabi;
  seq.lead_delay_us = lead;
  for (const Row& r : rows) seq.segments.push_back({r.pulse, r.phase, r.delay});
  return seq;
}

CatalogEntry grover_entry(const char* name, int target_index, PulseSequence seq, double published,
                          bool robust) {
  CatalogEntry e;
  e.name = name;
  if (robust) seq.rabi_range_mhz = RabiRange{};
  e.sequence = std::move(seq);
  e.target = TargetSpec{GroverTarget{2, target_index, 1, true}, ""};
  e.target.name = default_target_name(e.target);
  e.system = default_register(e.target);
  e.published_fidelity = published;
  e.robust = robust;
  return e;
}

CatalogEntry crx_entry(int n_carbons, int j, PulseSequence seq, double published) {
  CatalogEntry e;
  e.target = TargetSpec{ControlledRxTarget{n_carbons, j}, ""};
  e.target.name = default_target_name(e.target);
  e.name = e.target.name;
  e.sequence = std::move(seq);
  e.system = default_register(e.target);
  e.published_fidelity = published;
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  c.reserve(19);

  // Rabi-robust Grover sequences, 0.48-0.52 MHz.
  c.push_back(grover_entry("robust_00", 0,
                           table(0.5, 0.987,
                                 {{1.968, 0.976, 261},
                                  {2.418, 0.510, 213},
                                  {2.465, 0.394, 141},
                                  {1.136, 1.104, 90}}),
                           0.982, true));
  c.push_back(grover_entry("robust_01", 1,
                           table(0.5, 0.559,
                                 {{0.399, 0.555, 302},
                                  {2.905, 1.290, 195},
                                  {2.476, 0.472, 196},
                                  {1.139, 1.423, 90}}),
                           0.979, true));
  c.push_back(grover_entry("robust_10", 2,
                           table(0.5, 0.995,
                                 {{2.518, 1.484, 102},
                                  {2.353, 0.542, 340},
                                  {0.361, 0.210, 47},
                                  {1.191, 1.262, 90}}),
                           0.980, true));
  c.push_back(grover_entry("robust_11", 3,
                           table(0.5, 1.892,
                                 {{2.345, 0.995, 198},
                                  {2.583, 0.541, 0},
                                  {2.576, 0.452, 90},
                                  {0.665, 0.939, 90}}),
                           0.971, true));
  c.back().published_duration_us = 12.989;

  c.push_back(grover_entry("fixed_00", 0,
                           table(0.5, 0.944,
                                 {{1.922, 1.139, 266},
                                  {2.554, 0.481, 201},
                                  {1.802, 0.402, 142},
                                  {0.777, 1.126, 90}}),
                           0.991, false));
  c.push_back(grover_entry("fixed_01", 1,
                           table(0.5, 1.099,
                                 {{0.608, 0.479, 285},
                                  {2.442, 0.881, 2},
                                  {2.993, 0.608, 197},
                                  {1.768, 1.323, 90}}),
                           0.984, false));
  c.push_back(grover_entry("fixed_10", 2,
                           table(0.5, 0.634,
                                 {{1.763, 1.698, 112},
                                  {1.603, 0.448, 313},
                                  {1.945, 0.426, 23},
                                  {1.261, 1.224, 90}}),
                           0.990, false));
  c.push_back(grover_entry("fixed_11", 3,
                           table(0.5, 1.751,
                                 {{2.439, 1.069, 10},
                                  {1.661, 1.584, 125},
                                  {3.255, 0.514, 51},
                                  {1.183, 0.858, 90}}),
                           0.990, false));

  c.push_back(grover_entry("six_pulse_01", 1,
                           table(0.5, 0.887,
                                 {{0.834, 1.305, 192},
                                  {2.994, 1.570, 46},
                                  {1.994, 1.528, 326},
                                  {1.734, 0.770, 54},
                                  {1.204, 0.709, 238},
                                  {2.598, 1.103, 90}}),
                           0.995, false));
  c.back().published_duration_us = 19.23;

  c.push_back(crx_entry(1, 1,
                        table(0.5, 3.452,
                              {{2.059, 1.910, 179}, {2.124, 3.888, 136}, {1.000, 1.915, 90}}),
                        0.997));
  c.push_back(crx_entry(2, 1,
                        table(0.5, 3.294,
                              {{1.304, 0.766, 284},
                               {2.707, 0.222, 235},
                               {2.952, 1.160, 94},
                               {2.463, 3.006, 90}}),
                        0.995));
  c.push_back(crx_entry(2, 2,
                        table(0.5, 1.070,
                              {{1.679, 3.612, 87},
                               {3.071, 3.924, 263},
                               {3.711, 0.370, 224},
                               {3.702, 0.415, 90}}),
                        0.995));
  c.push_back(crx_entry(3, 1,
                        table(0.5, 1.384,
                              {{1.615, 2.163, 113},
                               {3.286, 0.133, 15},
                               {5.199, 1.126, 141},
                               {1.375, 1.202, 90}}),
                        0.997));
  c.push_back(crx_entry(3, 2,
                        table(0.5, 0.981,
                              {{2.490, 0.963, 253},
                               {5.768, 1.543, 202},
                               {1.411, 0.370, 72},
                               {4.837, 0.765, 90}}),
                        0.991));
  c.push_back(crx_entry(3, 3,
                        table(0.5, 1.277,
                              {{1.742, 0.758, 212},
                               {2.903, 0.751, 60},
                               {0.744, 1.076, 87},
                               {0.719, 1.490, 90}}),
                        0.956));
  c.push_back(crx_entry(4, 1,
                        table(1.0, 3.428,
                              {{4.375, 0.354, 226},
                               {0.665, 1.731, 169},
                               {1.707, 0.631, 205},
                               {2.060, 1.674, 90}}),
                        0.996));
  c.push_back(crx_entry(4, 2,
                        table(1.0, 3.290,
                              {{0.835, 1.865, 77},
                               {5.360, 1.077, 138},
                               {0.814, 0.572, 97},
                               {4.277, 2.477, 90}}),
                        0.987));
  c.push_back(crx_entry(4, 3,
                        table(1.0, 1.903,
                              {{3.557, 2.005, 84},
                               {3.055, 1.248, 323},
                               {2.940, 1.821, 334},
                               {3.984, 2.386, 90}}),
                        0.942));
  c.push_back(crx_entry(4, 4,
                        table(1.0, 0.112,
                              {{1.927, 1.417, 100},
                               {2.568, 2.062, 30},
                               {1.562, 0.555, 10},
                               {1.377, 1.895, 90}}),
                        0.930));
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

const CatalogEntry* find_entry(std::string_view name) {
  for (const auto& e : builtin_catalog())
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<VerificationRow> verify_catalog(const std::vector<CatalogEntry>& entries,
                                            const VerifyTolerances& tol) {
  std::vector<VerificationRow> rows(entries.size());
  const long n = static_cast<long>(entries.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const CatalogEntry& e = entries[i];
    const OperatorMatrix target = target_unitary(e.target);
    const SequencePropagator prop = e.system.propagator();
    VerificationRow r;
    r.name = e.name;
    r.published = e.published_fidelity;
    r.duration_us = sequence_duration(e.sequence);
    r.fixed_fidelity = gate_fidelity(prop.unitary(e.sequence), target);
    double limit = tol.fidelity;
    if (e.robust) {
      const RabiRange range = e.sequence.rabi_range_mhz.value_or(RabiRange{});
      double sum = 0.0;
      const auto grid = rabi_grid(range.lo_mhz, range.hi_mhz, tol.rabi_samples);
      for (double rabi : grid) sum += gate_fidelity(prop.unitary(e.sequence, rabi), target);
      r.computed = sum / static_cast<double>(grid.size());
      limit = tol.robust_fidelity;
    } else {
      r.computed = r.fixed_fidelity;
    }
    r.deviation = std::abs(r.computed - r.published);
    r.pass = r.deviation <= limit;
    if (e.published_duration_us) {
      r.duration_deviation_us = std::abs(r.duration_us - *e.published_duration_us);
      r.pass = r.pass && *r.duration_deviation_us <= tol.duration_us;
    }
    rows[i] = std::move(r);
  }
  return rows;
}

std::array<double, 4> simulate_search_populations(const CatalogEntry& entry) {
  if (entry.system.dim() != 4)
    throw std::invalid_argument("search populations need a two-qubit entry");
  const DensityMatrix rho0 = basis_state(4, 0);
  const auto p = populations(evolve_state(entry.sequence, rho0, entry.system.hamiltonian(),
                                          entry.system.drive()));
  return {p[0], p[1], p[2], p[3]};
}

std::array<double, 4> ideal_search_populations(const TargetSpec& target) {
  const OperatorMatrix u = target_unitary(target);
  if (u.rows() != 4) throw std::invalid_argument("search populations need a two-qubit target");
  std::array<double, 4> p{};
  for (int k = 0; k < 4; ++k) p[k] = std::norm(u(k, 0));
  return p;
}

}  // namespace nvpf
