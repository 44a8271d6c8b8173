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

#include <optional>
#include <string>
#include <vector>

#include "nvpf/spinsys.hpp"

namespace nvpf {

/// One rectangular MW pulse followed by a free-evolution delay.
struct PulseSegment {
  double pulse_us = 0.0;
  double phase_deg = 0.0;
  double post_delay_us = 0.0;
};

struct RabiRange {
  double lo_mhz = 0.48;
  double hi_mhz = 0.52;
};

/// n pulses and n+1 delays: lead delay, then (pulse, delay) per segment.
struct PulseSequence {
  double rabi_mhz = 0.5;
  std::optional<RabiRange> rabi_range_mhz;
  double lead_delay_us = 0.0;
  std::vector<PulseSegment> segments;

  int pulse_count() const { return static_cast<int>(segments.size()); }
};

/// Maps a phase onto [0, 360).
double normalize_phase_deg(double deg);

/// Throws std::invalid_argument on negative/non-finite durations or a
/// non-positive Rabi frequency.
void validate_sequence(const PulseSequence& seq);

/// Copy with all phases normalized to [0, 360).
PulseSequence normalized(PulseSequence seq);

/// Drive operators multiplied by the Rabi frequency as
/// rabi * (x cos(phi) + y sin(phi)).
struct DriveOperators {
  OperatorMatrix x;
  OperatorMatrix y;
};

/// Pseudo-spin s_x, s_y on the electron, identity on `n_carbons` carbons.
DriveOperators electron_drive(int n_carbons);

/// Free-evolution eigensystem plus drive operators, reused across many
/// sequences acting on the same register.
class SequencePropagator {
 public:
  SequencePropagator(const OperatorMatrix& h_free, DriveOperators drive);

  OperatorMatrix unitary(const PulseSequence& seq, double rabi_mhz) const;
  OperatorMatrix unitary(const PulseSequence& seq) const { return unitary(seq, seq.rabi_mhz); }
  int dim() const { return free_.dim(); }

 private:
  OperatorMatrix h_free_;
  DriveOperators drive_;
  HermitianEvolution free_;
};

/// Hamiltonian and drive of an electron coupled to a list of carbons.
struct SpinRegister {
  NVParams params;
  std::vector<CarbonCoupling> couplings{CarbonCoupling{}};

  OperatorMatrix hamiltonian() const { return multi_carbon_hamiltonian(params, couplings); }
  DriveOperators drive() const { return electron_drive(static_cast<int>(couplings.size())); }
  int dim() const { return static_cast<int>(std::size_t{2} << couplings.size()); }
  SequencePropagator propagator() const { return {hamiltonian(), drive()}; }
};

/// Time-ordered U = U_n^d U_n^MW ... U_1^MW U_0^d.
OperatorMatrix sequence_unitary(const PulseSequence& seq, const OperatorMatrix& h_free,
                                const DriveOperators& drive,
                                std::optional<double> rabi_override = std::nullopt);

double sequence_duration(const PulseSequence& seq);

/// |Tr(U_T^dagger U)| / dim.
double gate_fidelity(const OperatorMatrix& u, const OperatorMatrix& target);

/// Evenly spaced Rabi values from lo to hi inclusive; a single sample uses lo.
std::vector<double> rabi_grid(double lo_mhz, double hi_mhz, int n_samples);

/// Mean gate fidelity over `rabi_grid(lo, hi, n_samples)`.
double robust_gate_fidelity(const PulseSequence& seq, const OperatorMatrix& target,
                            const OperatorMatrix& h_free, const DriveOperators& drive,
                            double rabi_lo_mhz, double rabi_hi_mhz, int n_samples);

DensityMatrix evolve_state(const PulseSequence& seq, const DensityMatrix& rho0,
                           const OperatorMatrix& h_free, const DriveOperators& drive,
                           std::optional<double> rabi_override = std::nullopt);

/// Diagonal of rho. Entries in (-1e-6, 0) are clipped to zero; anything more
/// negative throws std::domain_error.
std::vector<double> populations(const DensityMatrix& rho);

struct FidelityReport {
  double fixed_fidelity = 0.0;
  std::optional<double> robust_fidelity;
  double duration_us = 0.0;
  std::string target_name;
};

struct RobustSampling {
  RabiRange range;
  int n_samples = 5;
};

FidelityReport fidelity_report(const PulseSequence& seq, const OperatorMatrix& target,
                               const OperatorMatrix& h_free, const DriveOperators& drive,
                               std::string target_name,
                               std::optional<RobustSampling> robust = std::nullopt);

}  // namespace nvpf
