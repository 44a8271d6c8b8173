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

#include <string>
#include <variant>

#include "nvpf/spinsys.hpp"

// Ideal target unitaries. Basis order is big-endian: the first qubit is the
// electron ({m_S=0, m_S=-1} as {|0>, |1>}), followed by the carbons.

namespace nvpf {

struct GroverTarget {
  int n_qubits = 2;
  int target_index = 3;
  int iterations = 1;
  bool include_prep = true;
};

/// Electron-controlled exp(-i pi I_x) on carbon j (1-based), firing on m_S = -1.
struct ControlledRxTarget {
  int n_carbons = 1;
  int j = 1;
};

struct CustomTarget {
  OperatorMatrix matrix;
};

struct TargetSpec {
  std::variant<GroverTarget, ControlledRxTarget, CustomTarget> kind;
  std::string name;
};

OperatorMatrix hadamard_layer(int n);
OperatorMatrix oracle_unitary(int n, int target_index);
OperatorMatrix diffusion_unitary(int n);
OperatorMatrix grover_circuit_unitary(const GroverTarget& spec);

/// round(pi / (4 asin(2^{-n/2})) - 1/2), at least 1.
int optimal_iterations(int n);

OperatorMatrix controlled_rx_target(int n_carbons, int j);

/// exp(-i theta (I_x cos phi + I_y sin phi)) for a spin 1/2.
OperatorMatrix single_qubit_rotation(double theta, double phi);

/// Validates the spec and builds its matrix. Throws std::invalid_argument.
OperatorMatrix target_unitary(const TargetSpec& spec);

/// Number of carbons the target acts on (the register is 1 + n qubits).
int target_carbon_count(const TargetSpec& spec);

/// Short label such as "grover_11" or "crx2_3q".
std::string default_target_name(const TargetSpec& spec);

}  // namespace nvpf
