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

#include "nvpf/spinsys.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nvpf {

namespace {

constexpr Complex kI{0.0, 1.0};

OperatorMatrix identity(int dim) { return OperatorMatrix::Identity(dim, dim); }

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Operator acting as `op` on carbon `slot` (0-based) of an electron + n carbon register.
OperatorMatrix on_carbon(const OperatorMatrix& electron, const OperatorMatrix& op, int slot,
                         int n_carbons) {
  std::vector<OperatorMatrix> factors;
  factors.reserve(n_carbons + 1);
  factors.push_back(electron);
  for (int k = 0; k < n_carbons; ++k) factors.push_back(k == slot ? op : identity(2));
  return tensor_embed(std::span<const OperatorMatrix>(factors));
}

// Index of m within the spin-1 ordering +1, 0, -1.
int spin_one_slot(int m) {
  if (m < -1 || m > 1) throw std::invalid_argument("spin-1 projection out of range");
  return 1 - m;
}

double fold(double deg, double lo) {
  double r = std::fmod(deg - lo, 180.0);
  if (r < 0) r += 180.0;
  return r + lo;
}

}  // namespace

double hermiticity_error(const OperatorMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_error(const OperatorMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return (m.adjoint() * m - identity(static_cast<int>(m.rows()))).cwiseAbs().maxCoeff();
}

bool is_hermitian(const OperatorMatrix& m, double tol) { return hermiticity_error(m) <= tol; }
bool is_unitary(const OperatorMatrix& m, double tol) { return unitarity_error(m) <= tol; }

std::vector<CarbonCoupling> published_couplings() {
  return {{-0.152, 0.110}, {-0.198, 0.328}, {-0.228, 0.164}, {-0.304, 0.274}};
}

SpinOperators spin_operators(Spin spin) {
  if (spin == Spin::Half) {
    OperatorMatrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 0.5, 0.5, 0;
    y << 0, -0.5 * kI, 0.5 * kI, 0;
    z << 0.5, 0, 0, -0.5;
    return {x, y, z};
  }
  const double r = 1.0 / std::sqrt(2.0);
  OperatorMatrix x = OperatorMatrix::Zero(3, 3), y = OperatorMatrix::Zero(3, 3),
                 z = OperatorMatrix::Zero(3, 3);
  x(0, 1) = x(1, 0) = x(1, 2) = x(2, 1) = r;
  y(0, 1) = y(1, 2) = -kI * r;
  y(1, 0) = y(2, 1) = kI * r;
  z(0, 0) = 1;
  z(2, 2) = -1;
  return {x, y, z};
}

OperatorMatrix tensor_embed(std::span<const OperatorMatrix> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor_embed: empty factor list");
  for (const auto& f : factors)
    if (f.rows() != f.cols() || f.rows() == 0)
      throw std::invalid_argument("tensor_embed: factor is not square");
  OperatorMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

OperatorMatrix tensor_embed(std::initializer_list<OperatorMatrix> factors) {
  return tensor_embed(std::span<const OperatorMatrix>(factors.begin(), factors.size()));
}

SpinOperators pseudo_spin() { return spin_operators(Spin::Half); }

OperatorMatrix two_qubit_hamiltonian(const NVParams& params, const CarbonCoupling& c) {
  const CarbonCoupling one[] = {c};
  return multi_carbon_hamiltonian(params, one);
}

OperatorMatrix multi_carbon_hamiltonian(const NVParams& params,
                                        std::span<const CarbonCoupling> couplings) {
  const int n = static_cast<int>(couplings.size());
  if (n == 0) throw std::invalid_argument("multi_carbon_hamiltonian: no carbons");
  if (n > 8) throw std::invalid_argument("multi_carbon_hamiltonian: more than 8 carbons");

  const auto s = pseudo_spin();
  const auto i = spin_operators(Spin::Half);
  const OperatorMatrix e = identity(2);
  const double nu_c = params.carbon_larmor_mhz();

  const int dim = 1 << (n + 1);
  OperatorMatrix h = OperatorMatrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    const auto& cj = couplings[j];
    h += (-nu_c - cj.a_zz / 2) * on_carbon(e, i.z, j, n);
    h += cj.a_zz * on_carbon(s.z, i.z, j, n);
    h += cj.a_zx * on_carbon(s.z, i.x, j, n);
    h -= (cj.a_zx / 2) * on_carbon(e, i.x, j, n);
  }
  return h;
}

int lab_index(int m_s, int m_n, bool carbon_down) {
  return (spin_one_slot(m_s) * 3 + spin_one_slot(m_n)) * 2 + (carbon_down ? 1 : 0);
}

OperatorMatrix full_lab_hamiltonian(const NVParams& p, const CarbonCoupling& c) {
  const auto s1 = spin_operators(Spin::One);
  const auto ic = spin_operators(Spin::Half);
  const OperatorMatrix e3 = identity(3), e2 = identity(2);
  const double b = p.field_mt;

  const OperatorMatrix sz = tensor_embed({s1.z, e3, e2});
  const OperatorMatrix nz = tensor_embed({e3, s1.z, e2});
  const OperatorMatrix cz = tensor_embed({e3, e3, ic.z});
  const OperatorMatrix cx = tensor_embed({e3, e3, ic.x});

  OperatorMatrix h = p.zero_field_mhz * sz * sz - p.gamma_e * b * sz +
                     p.quadrupole_mhz * nz * nz - p.gamma_n * b * nz - p.gamma_c * b * cz +
                     p.nitrogen_hyperfine_mhz * sz * nz + c.a_zz * sz * cz + c.a_zx * sz * cx;
  return h;
}

std::array<double, 3> nitrogen_detunings(const NVParams& params) {
  const OperatorMatrix lab = full_lab_hamiltonian(params, CarbonCoupling{0.0, 0.0});
  auto line = [&](int m_n) {
    return (lab(lab_index(-1, m_n, false), lab_index(-1, m_n, false)) -
            lab(lab_index(0, m_n, false), lab_index(0, m_n, false)))
        .real();
  };
  const double ref = line(1);
  return {line(1) - ref, line(0) - ref, line(-1) - ref};
}

LeakageHamiltonians nitrogen_leakage_hamiltonians(const NVParams& params, double rabi_mhz,
                                                  double phase_deg) {
  if (!(rabi_mhz > 0)) throw std::invalid_argument("leakage model: rabi must be positive");
  const auto s = pseudo_spin();
  const auto det = nitrogen_detunings(params);

  // An m_S=-1 level lying `det` above resonance shows up as -det * s_z.
  OperatorMatrix free = OperatorMatrix::Zero(6, 6);
  for (int k = 0; k < 3; ++k) {
    OperatorMatrix proj = OperatorMatrix::Zero(3, 3);
    proj(k, k) = 1.0;
    free += -det[k] * tensor_embed({s.z, proj});
  }
  const double phi = phase_deg * kPi / 180.0;
  OperatorMatrix drive =
      rabi_mhz * tensor_embed({OperatorMatrix(s.x * std::cos(phi) + s.y * std::sin(phi)),
                               identity(3)});
  return {free, drive};
}

QuantizationAngles quantization_angles(const CarbonCoupling& c, double nu_c_mhz) {
  const double den_minus = c.a_zz + nu_c_mhz;
  const double den_plus = c.a_zz - nu_c_mhz;
  if (c.a_zx == 0.0 && (den_minus == 0.0 || den_plus == 0.0))
    throw std::invalid_argument("quantization_angles: degenerate 0/0 input");
  const double to_deg = 180.0 / kPi;
  const double minus = fold(std::atan2(c.a_zx, den_minus) * to_deg, 0.0);
  double plus = fold(std::atan2(c.a_zx, den_plus) * to_deg, -90.0);
  if (plus == -90.0) plus = 90.0;
  return {minus, plus};
}

OperatorMatrix diagonalizing_transform(double theta_plus_deg, double theta_minus_deg) {
  auto ry = [](double deg) {
    const double h = deg * kPi / 360.0;
    OperatorMatrix r(2, 2);
    r << std::cos(h), -std::sin(h), std::sin(h), std::cos(h);
    return r;
  };
  OperatorMatrix u = OperatorMatrix::Zero(6, 6);
  u.block(0, 0, 2, 2) = ry(theta_plus_deg);
  u.block(2, 2, 2, 2) = identity(2);
  u.block(4, 4, 2, 2) = ry(theta_minus_deg);
  return u;
}

HermitianEvolution::HermitianEvolution(const OperatorMatrix& h) {
  const double err = hermiticity_error(h);
  if (!(err <= 1e-9))
    throw std::invalid_argument("propagator requires a Hermitian matrix (error " +
                                std::to_string(err) + ")");
  // Symmetrize so round-off in the lower triangle does not leak in.
  const OperatorMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

OperatorMatrix HermitianEvolution::propagator(double t_us) const {
  Eigen::VectorXcd phases(eigenvalues_.size());
  for (Eigen::Index k = 0; k < eigenvalues_.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -kTwoPi * eigenvalues_(k) * t_us));
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

OperatorMatrix hermitian_propagator(const OperatorMatrix& h, double t_us) {
  return HermitianEvolution(h).propagator(t_us);
}

}  // namespace nvpf
