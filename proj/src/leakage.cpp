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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nvpf/paperlab.hpp"

namespace nvpf {

NitrogenState::NitrogenState(double c_plus, double c_zero, double c_minus)
    : weights_{c_plus, c_zero, c_minus} {
  for (double w : weights_)
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("14N weights must lie in [0,1]");
  if (std::abs(c_plus + c_zero + c_minus - 1.0) > 1e-12)
    throw std::invalid_argument("14N weights must sum to 1");
}

NitrogenState NitrogenState::polarized(double p_n) {
  // Keep the sum exact so the constructor check never trips on rounding.
  const double rest = (1.0 - p_n) / 2.0;
  return NitrogenState(1.0 - 2.0 * rest, rest, rest);
}

NitrogenState NitrogenState::thermal_default() {
  return NitrogenState(4.0 / 7.0, 2.0 / 7.0, 1.0 / 7.0);
}

double nitrogen_leakage(const PulseSequence& seq, const NitrogenState& state,
                        const NVParams& params) {
  validate_sequence(seq);
  const auto hx = nitrogen_leakage_hamiltonians(params, 1.0, 0.0);
  const auto hy = nitrogen_leakage_hamiltonians(params, 1.0, 90.0);
  const SequencePropagator prop(hx.free, DriveOperators{hx.drive, hy.drive});
  const OperatorMatrix u = prop.unitary(seq);

  // Index 3 + k is |m_S=-1> x |m_N(k)>, k = 0, 1, 2 for m_N = +1, 0, -1.
  DensityMatrix rho0 = DensityMatrix::Zero(6, 6);
  for (int k = 0; k < 3; ++k) rho0(k, k) = state.weights()[k];
  const DensityMatrix rho = u * rho0 * u.adjoint();
  return std::clamp(rho(4, 4).real() + rho(5, 5).real(), 0.0, 1.0);
}

std::vector<std::pair<double, double>> polarization_sweep(const PulseSequence& seq,
                                                          const std::vector<double>& p_grid,
                                                          const NVParams& params) {
  for (double p : p_grid)
    if (!(p >= 1.0 / 3.0 - 1e-6 && p <= 1.0 + 1e-6))
      throw std::invalid_argument("polarization grid must lie in [1/3, 1]");
  std::vector<std::pair<double, double>> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) {
    const double pc = std::clamp(p, 0.0, 1.0);
    out.emplace_back(p, nitrogen_leakage(seq, NitrogenState::polarized(pc), params));
  }
  return out;
}

}  // namespace nvpf
