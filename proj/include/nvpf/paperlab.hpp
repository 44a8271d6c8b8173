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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nvpf/ga_optimizer.hpp"
#include "nvpf/grover_targets.hpp"
#include "nvpf/pulsesim.hpp"

namespace nvpf {

// ---------------------------------------------------------------------------
// Published pulse tables
// ---------------------------------------------------------------------------

struct CatalogEntry {
  std::string name;
  PulseSequence sequence;
  TargetSpec target;
  SpinRegister system;
  double published_fidelity = 0.0;
  bool robust = false;
  std::optional<double> published_duration_us;
};

/// The 19 published sequences: robust_{00,01,10,11}, fixed_{00,01,10,11},
/// six_pulse_01 and crx{j}_{n}q for the controlled rotations.
const std::vector<CatalogEntry>& builtin_catalog();

/// Looks up an entry by name; nullptr when absent.
const CatalogEntry* find_entry(std::string_view name);

struct VerifyTolerances {
  double fidelity = 0.005;
  double robust_fidelity = 0.01;
  double duration_us = 0.01;
  int rabi_samples = 5;
};

struct VerificationRow {
  std::string name;
  double computed = 0.0;   // robust average for robust entries, else fixed-Rabi fidelity
  double published = 0.0;
  double deviation = 0.0;  // |computed - published|
  double fixed_fidelity = 0.0;
  double duration_us = 0.0;
  std::optional<double> duration_deviation_us;
  bool pass = false;
};

std::vector<VerificationRow> verify_catalog(const std::vector<CatalogEntry>& entries,
                                            const VerifyTolerances& tol = {});

/// Populations of |00>,|01>,|10>,|11> after running the entry on |00><00|
/// at its nominal Rabi frequency. Throws for entries not on 2 qubits.
std::array<double, 4> simulate_search_populations(const CatalogEntry& entry);

/// Populations after the ideal circuit of a two-qubit target acting on |00>.
std::array<double, 4> ideal_search_populations(const TargetSpec& target);

// ---------------------------------------------------------------------------
// 14N leakage
// ---------------------------------------------------------------------------

/// Initial 14N populations (c_{+1}, c_0, c_{-1}); they must sum to 1.
class NitrogenState {
 public:
  NitrogenState(double c_plus, double c_zero, double c_minus);

  /// (p, (1-p)/2, (1-p)/2).
  static NitrogenState polarized(double p_n);
  /// (4/7, 2/7, 1/7).
  static NitrogenState thermal_default();

  const std::array<double, 3>& weights() const { return weights_; }

 private:
  std::array<double, 3> weights_;
};

/// Population driven into |m_S=-1, m_N=0> and |m_S=-1, m_N=-1> by the sequence,
/// starting from |0><0|_e x diag(c).
double nitrogen_leakage(const PulseSequence& seq, const NitrogenState& state,
                        const NVParams& params = {});

/// L_p at each p_N; throws std::invalid_argument for p_N outside [1/3, 1].
std::vector<std::pair<double, double>> polarization_sweep(const PulseSequence& seq,
                                                          const std::vector<double>& p_grid,
                                                          const NVParams& params = {});

// ---------------------------------------------------------------------------
// States and error budget
// ---------------------------------------------------------------------------

/// Re Tr(rho_a rho_b).
double state_fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// |i><i| on `dim` levels.
DensityMatrix basis_state(int dim, int index);
DensityMatrix maximally_mixed(int dim);

/// f_search / (f1 f2). f_ini is carried for reporting only.
double error_budget(double f_ini, double f_search, double f1, double f2);

/// |0><0| x [p|0><0| + (1-p)|1><1| + c(|0><1| + |1><0|)]. Throws when the
/// carbon block would not be positive semidefinite.
DensityMatrix initial_state_model(double p, double c);

// ---------------------------------------------------------------------------
// FID spectrum
// ---------------------------------------------------------------------------

enum class Transition { ZeroToMinus, ZeroToPlus };

struct SpectrumPoint {
  double frequency_mhz;
  double amplitude;
};

/// Ramsey-type FID on the lab Hamiltonian restricted to one electron doublet,
/// read out as the m_S=0 population and Fourier transformed. Returns bins
/// 0 .. n_points/2. n_points must be a power of two >= 256.
std::vector<SpectrumPoint> fid_spectrum(Transition transition, double nu_d_mhz, double dwell_us,
                                        int n_points, const NVParams& params = {},
                                        const CarbonCoupling& carbon = {});

/// Line positions (MHz, including the nu_d offset) predicted from eigenvalue
/// differences, with their relative weights.
std::vector<SpectrumPoint> predicted_lines(Transition transition, double nu_d_mhz,
                                           const NVParams& params = {},
                                           const CarbonCoupling& carbon = {});

}  // namespace nvpf
