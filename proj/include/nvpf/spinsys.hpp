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
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace nvpf {

using Complex = std::complex<double>;

// Dense complex square matrix. Hamiltonians are stored as H/2pi in MHz,
// unitaries and density matrices are dimensionless.
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Largest entrywise |H - H^dagger|.
double hermiticity_error(const OperatorMatrix& m);
// Largest entrywise |U^dagger U - I|.
double unitarity_error(const OperatorMatrix& m);

bool is_hermitian(const OperatorMatrix& m, double tol = 1e-12);
bool is_unitary(const OperatorMatrix& m, double tol = 1e-10);

/// Physical constants of the NV register. Frequencies in MHz, field in mT,
/// gyromagnetic ratios in MHz/mT.
struct NVParams {
  double zero_field_mhz = 2870.0;       // D
  double field_mt = 14.8;               // B, along the NV axis
  double nitrogen_hyperfine_mhz = -2.16;  // A_N
  double quadrupole_mhz = -4.95;        // P
  double gamma_e = -28.02495;
  double gamma_n = 0.0030766;
  double gamma_c = 0.0107084;

  double carbon_larmor_mhz() const { return gamma_c * field_mt; }
};

/// Secular hyperfine components of one 13C nucleus (MHz).
struct CarbonCoupling {
  double a_zz = -0.152;
  double a_zx = 0.110;
};

/// Rows of the coupling table used in the multi-carbon simulations.
std::vector<CarbonCoupling> published_couplings();

enum class Spin { Half, One };

struct SpinOperators {
  OperatorMatrix x, y, z;
};

SpinOperators spin_operators(Spin spin);

/// Kronecker product of the factors in listed order. Throws
/// std::invalid_argument for an empty list or a non-square factor.
OperatorMatrix tensor_embed(std::span<const OperatorMatrix> factors);
OperatorMatrix tensor_embed(std::initializer_list<OperatorMatrix> factors);

// Pseudo-spin 1/2 for the electron doublet {m_S=0, m_S=-1}; s_z = +1/2 on m_S=0.
SpinOperators pseudo_spin();

/// Rotating-frame Hamiltonian of the electron pseudo-spin and one carbon,
/// basis |0 up>, |0 down>, |-1 up>, |-1 down>.
OperatorMatrix two_qubit_hamiltonian(const NVParams& params, const CarbonCoupling& c);

/// Electron pseudo-spin plus n carbons, electron most significant. Throws
/// std::invalid_argument for an empty list or more than 8 carbons.
OperatorMatrix multi_carbon_hamiltonian(const NVParams& params,
                                        std::span<const CarbonCoupling> couplings);

/// Lab-frame Hamiltonian on electron(3) x 14N(3) x 13C(2), 18x18. Spin-1
/// factors are ordered m = +1, 0, -1; the carbon as up, down.
OperatorMatrix full_lab_hamiltonian(const NVParams& params, const CarbonCoupling& c);

inline constexpr int kLabDim = 18;
// Index into the lab basis for (m_S, m_N, carbon_down).
int lab_index(int m_s, int m_n, bool carbon_down);

struct LeakageHamiltonians {
  OperatorMatrix free;   // 6x6, MHz
  OperatorMatrix drive;  // 6x6, MHz, rabi included
};

/// Electron doublet {0, -1} x 14N {+1, 0, -1} in the frame resonant with the
/// m_N = +1 transition. Detunings are read off the lab Hamiltonian.
LeakageHamiltonians nitrogen_leakage_hamiltonians(const NVParams& params, double rabi_mhz,
                                                  double phase_deg);

/// Per-m_N electron detuning (MHz) relative to the m_N = +1 line, index 0..2
/// for m_N = +1, 0, -1.
std::array<double, 3> nitrogen_detunings(const NVParams& params);

struct QuantizationAngles {
  double theta_minus_deg;  // folded to [0, 180)
  double theta_plus_deg;   // principal branch (-90, 90]
};

/// Tilt of the carbon quantization axis for m_S = -1 and +1. Throws
/// std::invalid_argument when numerator and a denominator both vanish.
QuantizationAngles quantization_angles(const CarbonCoupling& c, double nu_c_mhz);

/// Block rotation |1><1| x Ry(theta+) + |0><0| x E + |-1><-1| x Ry(theta-)
/// on electron(3) x carbon(2).
OperatorMatrix diagonalizing_transform(double theta_plus_deg, double theta_minus_deg);

/// Eigensystem of a Hermitian matrix, reused for propagators at many times.
class HermitianEvolution {
 public:
  /// Throws std::invalid_argument when h is not Hermitian within 1e-9.
  explicit HermitianEvolution(const OperatorMatrix& h);

  /// exp(-i 2pi H t) with H in MHz and t in microseconds.
  OperatorMatrix propagator(double t_us) const;
  int dim() const { return static_cast<int>(eigenvalues_.size()); }

 private:
  Eigen::VectorXd eigenvalues_;
  OperatorMatrix eigenvectors_;
};

OperatorMatrix hermitian_propagator(const OperatorMatrix& h, double t_us);

}  // namespace nvpf
