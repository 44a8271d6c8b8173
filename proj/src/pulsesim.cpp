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

#include "nvpf/pulsesim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace nvpf {

namespace {

void check_dims(const OperatorMatrix& h_free, const DriveOperators& drive) {
  const auto n = h_free.rows();
  if (h_free.cols() != n || drive.x.rows() != n || drive.x.cols() != n ||
      drive.y.rows() != n || drive.y.cols() != n)
    throw std::invalid_argument("sequence operators have mismatched dimensions");
}

}  // namespace

double normalize_phase_deg(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0) r += 360.0;
  // fmod of a tiny negative number can round up to exactly 360.
  return r >= 360.0 ? 0.0 : r;
}

void validate_sequence(const PulseSequence& seq) {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!(std::isfinite(seq.rabi_mhz) && seq.rabi_mhz > 0.0))
    throw std::invalid_argument("rabi_mhz must be positive");
  if (!ok(seq.lead_delay_us)) throw std::invalid_argument("lead_delay_us must be >= 0");
  for (const auto& s : seq.segments) {
    if (!ok(s.pulse_us) || !ok(s.post_delay_us))
      throw std::invalid_argument("segment durations must be >= 0");
    if (!std::isfinite(s.phase_deg)) throw std::invalid_argument("phase must be finite");
  }
  if (seq.rabi_range_mhz) {
    const auto& r = *seq.rabi_range_mhz;
    if (!(r.lo_mhz > 0 && r.lo_mhz <= r.hi_mhz))
      throw std::invalid_argument("rabi_range_mhz must satisfy 0 < lo <= hi");
  }
}

PulseSequence normalized(PulseSequence seq) {
  for (auto& s : seq.segments) s.phase_deg = normalize_phase_deg(s.phase_deg);
  return seq;
}

DriveOperators electron_drive(int n_carbons) {
  const auto s = pseudo_spin();
  const int rest = 1 << n_carbons;
  const OperatorMatrix e = OperatorMatrix::Identity(rest, rest);
  return {tensor_embed({s.x, e}), tensor_embed({s.y, e})};
}

SequencePropagator::SequencePropagator(const OperatorMatrix& h_free, DriveOperators drive)
    : h_free_(h_free), drive_(std::move(drive)), free_(h_free) {
  check_dims(h_free_, drive_);
  if (!is_hermitian(drive_.x, 1e-9) || !is_hermitian(drive_.y, 1e-9))
    throw std::invalid_argument("drive operators must be Hermitian");
}

OperatorMatrix SequencePropagator::unitary(const PulseSequence& seq, double rabi) const {
  OperatorMatrix u = free_.propagator(seq.lead_delay_us);
  for (const auto& s : seq.segments) {
    if (s.pulse_us != 0.0) {
      const double phi = s.phase_deg * kPi / 180.0;
      const OperatorMatrix h =
          h_free_ + rabi * (std::cos(phi) * drive_.x + std::sin(phi) * drive_.y);
      u = HermitianEvolution(h).propagator(s.pulse_us) * u;
    }
    if (s.post_delay_us != 0.0) u = free_.propagator(s.post_delay_us) * u;
  }
  return u;
}

OperatorMatrix sequence_unitary(const PulseSequence& seq, const OperatorMatrix& h_free,
                                const DriveOperators& drive,
                                std::optional<double> rabi_override) {
  return SequencePropagator(h_free, drive).unitary(seq, rabi_override.value_or(seq.rabi_mhz));
}

double sequence_duration(const PulseSequence& seq) {
  double total = seq.lead_delay_us;
  for (const auto& s : seq.segments) total += s.pulse_us + s.post_delay_us;
  return total;
}

double gate_fidelity(const OperatorMatrix& u, const OperatorMatrix& target) {
  if (u.rows() != target.rows() || u.cols() != target.cols() || u.rows() != u.cols())
    throw std::invalid_argument("gate_fidelity: dimension mismatch");
  const double f = std::abs((target.adjoint() * u).trace()) / static_cast<double>(u.rows());
  return std::clamp(f, 0.0, 1.0);
}

std::vector<double> rabi_grid(double lo_mhz, double hi_mhz, int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("rabi grid needs at least one sample");
  if (!(lo_mhz <= hi_mhz)) throw std::invalid_argument("rabi grid needs lo <= hi");
  std::vector<double> grid(n_samples);
  for (int k = 0; k < n_samples; ++k)
    grid[k] = n_samples == 1 ? lo_mhz
                             : lo_mhz + (hi_mhz - lo_mhz) * k / static_cast<double>(n_samples - 1);
  return grid;
}

double robust_gate_fidelity(const PulseSequence& seq, const OperatorMatrix& target,
                            const OperatorMatrix& h_free, const DriveOperators& drive,
                            double rabi_lo_mhz, double rabi_hi_mhz, int n_samples) {
  const auto grid = rabi_grid(rabi_lo_mhz, rabi_hi_mhz, n_samples);
  const SequencePropagator prop(h_free, drive);
  double sum = 0.0;
  for (double rabi : grid) sum += gate_fidelity(prop.unitary(seq, rabi), target);
  return sum / static_cast<double>(grid.size());
}

DensityMatrix evolve_state(const PulseSequence& seq, const DensityMatrix& rho0,
                           const OperatorMatrix& h_free, const DriveOperators& drive,
                           std::optional<double> rabi_override) {
  if (rho0.rows() != h_free.rows() || rho0.cols() != h_free.cols())
    throw std::invalid_argument("evolve_state: dimension mismatch");
  if (std::abs(rho0.trace() - Complex(1.0, 0.0)) > 1e-9)
    throw std::invalid_argument("evolve_state: initial state must have unit trace");
  const OperatorMatrix u = sequence_unitary(seq, h_free, drive, rabi_override);
  return u * rho0 * u.adjoint();
}

std::vector<double> populations(const DensityMatrix& rho) {
  std::vector<double> out(rho.rows());
  for (Eigen::Index k = 0; k < rho.rows(); ++k) {
    const double p = rho(k, k).real();
    if (p < -1e-6) throw std::domain_error("populations: significantly negative diagonal");
    out[k] = std::max(p, 0.0);
  }
  return out;
}

FidelityReport fidelity_report(const PulseSequence& seq, const OperatorMatrix& target,
                               const OperatorMatrix& h_free, const DriveOperators& drive,
                               std::string target_name, std::optional<RobustSampling> robust) {
  FidelityReport report;
  report.target_name = std::move(target_name);
  report.duration_us = sequence_duration(seq);
  report.fixed_fidelity = gate_fidelity(sequence_unitary(seq, h_free, drive), target);
  if (robust)
    report.robust_fidelity = robust_gate_fidelity(seq, target, h_free, drive, robust->range.lo_mhz,
                                                  robust->range.hi_mhz, robust->n_samples);
  return report;
}

}  // namespace nvpf
