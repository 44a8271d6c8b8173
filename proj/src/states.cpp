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
#include <stdexcept>

#include "nvpf/paperlab.hpp"

namespace nvpf {

double state_fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  // Tr(AB) without forming the product.
  return (a.transpose().cwiseProduct(b)).sum().real();
}

DensityMatrix basis_state(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) throw std::invalid_argument("basis_state: bad index");
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  rho(index, index) = 1.0;
  return rho;
}

DensityMatrix maximally_mixed(int dim) {
  if (dim < 1) throw std::invalid_argument("maximally_mixed: dim must be positive");
  return DensityMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

double error_budget(double /*f_ini*/, double f_search, double f1, double f2) {
  const double den = f1 * f2;
  if (den == 0.0 || !std::isfinite(den))
    throw std::invalid_argument("error_budget: f1 and f2 must be nonzero");
  return f_search / den;
}

DensityMatrix initial_state_model(double p, double c) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("initial_state_model: p outside [0,1]");
  if (!std::isfinite(c) || c * c > p * (1.0 - p) + 1e-12)
    throw std::invalid_argument("initial_state_model: coherence too large for a valid state");
  DensityMatrix rho = DensityMatrix::Zero(4, 4);
  rho(0, 0) = p;
  rho(1, 1) = 1.0 - p;
  rho(0, 1) = c;
  rho(1, 0) = c;
  return rho;
}

}  // namespace nvpf
