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

#include <cmath>
#include <random>

#include "nvpf/spinsys.hpp"

namespace nvpf::testing {

// Scaling-and-squaring Taylor exponential of -i 2pi H t. Shares no code with
// the eigendecomposition path in the library.
inline OperatorMatrix taylor_propagator(const OperatorMatrix& h, double t) {
  const OperatorMatrix a = Complex(0.0, -kTwoPi * t) * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
  const OperatorMatrix b = a / std::pow(2.0, squarings);
  OperatorMatrix term = OperatorMatrix::Identity(h.rows(), h.cols());
  OperatorMatrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < squarings; ++k) sum = sum * sum;
  return sum;
}

inline OperatorMatrix random_hermitian(int dim, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  OperatorMatrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = Complex(n(rng), n(rng));
  return (m + m.adjoint()) / 2.0;
}

inline double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace nvpf::testing
