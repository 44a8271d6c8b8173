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

#include "nvpf/grover_targets.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nvpf {

namespace {

constexpr int kMaxQubits = 12;

void check_qubits(int n) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count out of range");
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

OperatorMatrix hadamard_layer(int n) {
  check_qubits(n);
  OperatorMatrix h(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  h << r, r, r, -r;
  std::vector<OperatorMatrix> factors(n, h);
  return tensor_embed(std::span<const OperatorMatrix>(factors));
}

OperatorMatrix oracle_unitary(int n, int target_index) {
  check_qubits(n);
  const int dim = 1 << n;
  if (target_index < 0 || target_index >= dim)
    throw std::invalid_argument("oracle target index out of range");
  OperatorMatrix u = OperatorMatrix::Identity(dim, dim);
  u(target_index, target_index) = -1.0;
  return u;
}

OperatorMatrix diffusion_unitary(int n) {
  check_qubits(n);
  const int dim = 1 << n;
  const double w = 2.0 / dim;
  OperatorMatrix d = OperatorMatrix::Constant(dim, dim, w);
  d.diagonal().array() -= 1.0;
  return d;
}

OperatorMatrix grover_circuit_unitary(const GroverTarget& spec) {
  check_qubits(spec.n_qubits);
  if (spec.iterations < 0) throw std::invalid_argument("negative Grover iteration count");
  const int dim = 1 << spec.n_qubits;
  const OperatorMatrix step =
      diffusion_unitary(spec.n_qubits) * oracle_unitary(spec.n_qubits, spec.target_index);
  OperatorMatrix u = OperatorMatrix::Identity(dim, dim);
  for (int k = 0; k < spec.iterations; ++k) u = step * u;
  if (spec.include_prep) u = u * hadamard_layer(spec.n_qubits);
  return u;
}

int optimal_iterations(int n) {
  check_qubits(n);
  const double theta = std::asin(std::pow(2.0, -0.5 * n));
  const int m = static_cast<int>(std::lround(kPi / (4.0 * theta) - 0.5));
  return std::max(m, 1);
}

OperatorMatrix controlled_rx_target(int n_carbons, int j) {
  if (n_carbons < 1 || n_carbons > 8) throw std::invalid_argument("carbon count out of range");
  if (j < 1 || j > n_carbons) throw std::invalid_argument("controlled-Rx target carbon out of range");
  const int rest = 1 << n_carbons;
  std::vector<OperatorMatrix> factors(n_carbons, OperatorMatrix::Identity(2, 2));
  factors[j - 1] = single_qubit_rotation(kPi, 0.0);
  const OperatorMatrix rx = tensor_embed(std::span<const OperatorMatrix>(factors));
  OperatorMatrix u = OperatorMatrix::Zero(2 * rest, 2 * rest);
  u.topLeftCorner(rest, rest).setIdentity();
  u.bottomRightCorner(rest, rest) = rx;
  return u;
}

OperatorMatrix single_qubit_rotation(double theta, double phi) {
  // Closed form of the spin-1/2 exponential: cos(theta/2) E - 2i sin(theta/2) n.I
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const Complex e_minus = std::exp(Complex(0.0, -phi));
  const Complex e_plus = std::exp(Complex(0.0, phi));
  OperatorMatrix r(2, 2);
  r << c, Complex(0.0, -s) * e_minus, Complex(0.0, -s) * e_plus, c;
  return r;
}

OperatorMatrix target_unitary(const TargetSpec& spec) {
  return std::visit(
      overloaded{
          [](const GroverTarget& g) { return grover_circuit_unitary(g); },
          [](const ControlledRxTarget& c) { return controlled_rx_target(c.n_carbons, c.j); },
          [](const CustomTarget& c) -> OperatorMatrix {
            const auto n = c.matrix.rows();
            if (n < 4 || c.matrix.cols() != n || (n & (n - 1)) != 0)
              throw std::invalid_argument("custom target must be 2^k x 2^k with k >= 2");
            if (!is_unitary(c.matrix, 1e-8)) throw std::invalid_argument("custom target is not unitary");
            return c.matrix;
          },
      },
      spec.kind);
}

int target_carbon_count(const TargetSpec& spec) {
  return std::visit(overloaded{
                        [](const GroverTarget& g) { return g.n_qubits - 1; },
                        [](const ControlledRxTarget& c) { return c.n_carbons; },
                        [](const CustomTarget& c) {
                          int n = 0;
                          while ((Eigen::Index{2} << n) < c.matrix.rows()) ++n;
                          return n;
                        },
                    },
                    spec.kind);
}

std::string default_target_name(const TargetSpec& spec) {
  return std::visit(overloaded{
                        [](const GroverTarget& g) {
                          std::string bits;
                          for (int q = g.n_qubits - 1; q >= 0; --q)
                            bits += ((g.target_index >> q) & 1) ? '1' : '0';
                          return "grover_" + bits;
                        },
                        [](const ControlledRxTarget& c) {
                          return "crx" + std::to_string(c.j) + "_" +
                                 std::to_string(c.n_carbons + 1) + "q";
                        },
                        [](const CustomTarget&) { return std::string("custom"); },
                    },
                    spec.kind);
}

}  // namespace nvpf
