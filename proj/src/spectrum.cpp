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

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <stdexcept>

#include "nvpf/paperlab.hpp"

namespace nvpf {

namespace {

constexpr int kDoubletDim = 12;

int excited_ms(Transition t) { return t == Transition::ZeroToMinus ? -1 : 1; }

// Lab Hamiltonian on {m_S=0, m_S=excited} x 14N x 13C, ordered with m_S=0
// first, in the frame rotating at the bare m_N=0 line of the doublet.
OperatorMatrix doublet_hamiltonian(Transition t, const NVParams& params,
                                   const CarbonCoupling& carbon) {
  const int ms = excited_ms(t);
  const OperatorMatrix lab = full_lab_hamiltonian(params, carbon);
  const OperatorMatrix bare = full_lab_hamiltonian(params, CarbonCoupling{0.0, 0.0});
  const double ref =
      bare(lab_index(ms, 0, false), lab_index(ms, 0, false)).real() -
      bare(lab_index(0, 0, false), lab_index(0, 0, false)).real();

  const int e_levels[2] = {0, ms};
  const int n_levels[3] = {1, 0, -1};
  int idx[kDoubletDim];
  int k = 0;
  for (int e : e_levels)
    for (int n : n_levels)
      for (bool down : {false, true}) idx[k++] = lab_index(e, n, down);

  OperatorMatrix h(kDoubletDim, kDoubletDim);
  for (int r = 0; r < kDoubletDim; ++r)
    for (int c = 0; c < kDoubletDim; ++c) h(r, c) = lab(idx[r], idx[c]);
  for (int r = kDoubletDim / 2; r < kDoubletDim; ++r) h(r, r) -= ref;
  return h;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

struct FftwPlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};
struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

std::vector<SpectrumPoint> fid_spectrum(Transition transition, double nu_d_mhz, double dwell_us,
                                        int n_points, const NVParams& params,
                                        const CarbonCoupling& carbon) {
  if (n_points < 256 || !power_of_two(n_points))
    throw std::invalid_argument("n_points must be a power of two >= 256");
  if (!(dwell_us > 0.0 && std::isfinite(dwell_us)))
    throw std::invalid_argument("dwell must be positive");
  if (!std::isfinite(nu_d_mhz)) throw std::invalid_argument("nu_d must be finite");

  const HermitianEvolution free(doublet_hamiltonian(transition, params, carbon));
  const int nuclear = kDoubletDim / 2;
  const OperatorMatrix id_n = OperatorMatrix::Identity(nuclear, nuclear);
  const OperatorMatrix first = tensor_embed({single_qubit_rotation(kPi / 2, 0.0), id_n});
  DensityMatrix rho0 = DensityMatrix::Zero(kDoubletDim, kDoubletDim);
  for (int k = 0; k < nuclear; ++k) rho0(k, k) = 1.0 / nuclear;
  const DensityMatrix rho1 = first * rho0 * first.adjoint();

  std::vector<double> signal(n_points);
  for (int k = 0; k < n_points; ++k) {
    const double tau = k * dwell_us;
    const OperatorMatrix u = free.propagator(tau);
    const OperatorMatrix second =
        tensor_embed({single_qubit_rotation(kPi / 2, kTwoPi * nu_d_mhz * tau), id_n});
    const OperatorMatrix total = second * u;
    const DensityMatrix rho = total * rho1 * total.adjoint();
    double p0 = 0.0;
    for (int i = 0; i < nuclear; ++i) p0 += rho(i, i).real();
    signal[k] = p0;
  }

  double mean = 0.0;
  for (double s : signal) mean += s;
  mean /= n_points;
  const double t_apod = 0.5 * n_points * dwell_us;

  const int n_out = n_points / 2 + 1;
  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(n_points));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(n_out));
  std::unique_ptr<fftw_plan_s, FftwPlanDeleter> plan(
      fftw_plan_dft_r2c_1d(n_points, in.get(), out.get(), FFTW_ESTIMATE));
  for (int k = 0; k < n_points; ++k)
    in.get()[k] = (signal[k] - mean) * std::exp(-k * dwell_us / t_apod);
  fftw_execute(plan.get());

  std::vector<SpectrumPoint> spectrum(n_out);
  const double df = 1.0 / (n_points * dwell_us);
  for (int k = 0; k < n_out; ++k) {
    const double re = out.get()[k][0];
    const double im = out.get()[k][1];
    spectrum[k] = {k * df, std::hypot(re, im) / n_points};
  }
  return spectrum;
}

std::vector<SpectrumPoint> predicted_lines(Transition transition, double nu_d_mhz,
                                           const NVParams& params, const CarbonCoupling& carbon) {
  const OperatorMatrix h = doublet_hamiltonian(transition, params, carbon);
  const int nuclear = kDoubletDim / 2;
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> ground(h.topLeftCorner(nuclear, nuclear));
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> excited(h.bottomRightCorner(nuclear, nuclear));
  const OperatorMatrix overlap = excited.eigenvectors().adjoint() * ground.eigenvectors();

  std::vector<SpectrumPoint> lines;
  for (int a = 0; a < nuclear; ++a)
    for (int b = 0; b < nuclear; ++b) {
      const double w = std::norm(overlap(b, a));
      if (w < 1e-9) continue;
      const double f = excited.eigenvalues()(b) - ground.eigenvalues()(a);
      lines.push_back({std::abs(nu_d_mhz - f), w});
    }
  return lines;
}

}  // namespace nvpf
