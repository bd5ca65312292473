// Copyright 2026 The qtel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtel/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qtel/error.hpp"

namespace qtel {

namespace {

constexpr int kBatch = 256;

void require_finite(const Eigen::VectorXcd &v, const char *what) {
  if (!v.allFinite())
    throw std::invalid_argument(std::string(what) + " contains NaN or Inf");
}

}  // namespace

WavePacket evolve(const EigenSystem &es, const Eigen::VectorXcd &c0, double t,
                  double hbar) {
  if (c0.size() != es.dim())
    throw std::invalid_argument("evolve: coefficient count does not match eigen system");
  require_finite(c0, "evolve: coefficients");
  if (!std::isfinite(t) || !std::isfinite(hbar) || !(hbar > 0))
    throw std::invalid_argument("evolve: t and hbar must be finite, hbar > 0");
  if (std::abs(c0.squaredNorm() - 1.0) > 1e-8)
    throw std::invalid_argument("evolve: initial state is not normalized");

  Eigen::VectorXcd phased(c0.size());
  for (Eigen::Index i = 0; i < c0.size(); ++i)
    phased(i) = c0(i) * std::polar(1.0, -es.eigenvalues(i) * t / hbar);
  return {t, es.eigenvectors.cast<std::complex<double>>() * phased};
}

WavePacket evolve(const EigenSystem &es, const Eigen::VectorXd &c0, double t,
                  double hbar) {
  return evolve(es, Eigen::VectorXcd(c0.cast<std::complex<double>>()), t, hbar);
}

Eigen::VectorXcd project_state(const EigenSystem &es,
                               const Eigen::VectorXcd &amplitudes) {
  if (amplitudes.size() != es.dim())
    throw std::invalid_argument("project_state: dimension mismatch");
  return es.eigenvectors.transpose().cast<std::complex<double>>() * amplitudes;
}

double side_occupation(const WavePacket &wp, const BasisMap &b, Side side,
                       bool include_environment) {
  if (wp.amplitudes.size() != b.size())
    throw std::invalid_argument("side_occupation: dimension mismatch");
  double occ = std::norm(wp.amplitudes(b.remote_index(side))) +
               std::norm(wp.amplitudes(b.gateway_index(side)));
  if (include_environment)
    for (int k = 1; k <= b.continuum_size(); ++k)
      occ += std::norm(wp.amplitudes(b.environment_index(side, k)));
  return occ;
}

Eigen::MatrixXcd density_operator(const WavePacket &wp) {
  if (wp.amplitudes.size() > 256)
    throw std::invalid_argument("density_operator: limited to dim <= 256");
  return wp.amplitudes * wp.amplitudes.adjoint();
}

std::vector<double> time_grid(double t_max, int t_steps) {
  if (t_steps < 2) throw std::invalid_argument("time grid needs t_steps >= 2");
  if (!std::isfinite(t_max) || !(t_max > 0))
    throw std::invalid_argument("time grid needs a positive finite t_max");
  std::vector<double> t(t_steps);
  for (int i = 0; i < t_steps; ++i) t[i] = i * (t_max / t_steps);
  return t;
}

TimeSeries sample_occupations(const EigenSystem &es, const Eigen::VectorXd &c0,
                              const BasisMap &b, const std::vector<double> &times,
                              double hbar, bool include_environment) {
  if (es.dim() != b.size() || c0.size() != es.dim())
    throw std::invalid_argument("sample_occupations: dimension mismatch");
  if (!c0.allFinite()) throw std::invalid_argument("sample_occupations: NaN coefficients");
  if (!(hbar > 0)) throw std::invalid_argument("sample_occupations: hbar must be positive");

  const int dim = es.dim();
  const int n = b.continuum_size();
  TimeSeries ts;
  ts.include_environment = include_environment;
  ts.times = times;
  ts.occ_alpha.resize(times.size());
  ts.occ_beta.resize(times.size());
  ts.norm.resize(times.size());

  // Rows belonging to each side, in the input basis.
  auto side_mask = [&](Side s) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(dim);
    m(b.remote_index(s)) = 1;
    m(b.gateway_index(s)) = 1;
    if (include_environment)
      for (int k = 1; k <= n; ++k) m(b.environment_index(s, k)) = 1;
    return m;
  };
  const Eigen::VectorXd mask_a = side_mask(Side::Alpha);
  const Eigen::VectorXd mask_b = side_mask(Side::Beta);

  Eigen::MatrixXd re(dim, kBatch), im(dim, kBatch);
  for (std::size_t start = 0; start < times.size(); start += kBatch) {
    const int count = static_cast<int>(std::min<std::size_t>(kBatch, times.size() - start));
    for (int j = 0; j < count; ++j) {
      const double t = times[start + j];
      for (int i = 0; i < dim; ++i) {
        const double phase = -es.eigenvalues(i) * t / hbar;
        re(i, j) = c0(i) * std::cos(phase);
        im(i, j) = c0(i) * std::sin(phase);
      }
    }
    const Eigen::MatrixXd ar = es.eigenvectors * re.leftCols(count);
    const Eigen::MatrixXd ai = es.eigenvectors * im.leftCols(count);
    const Eigen::MatrixXd prob = ar.cwiseAbs2() + ai.cwiseAbs2();
    for (int j = 0; j < count; ++j) {
      ts.occ_alpha[start + j] = mask_a.dot(prob.col(j));
      ts.occ_beta[start + j] = mask_b.dot(prob.col(j));
      ts.norm[start + j] = prob.col(j).sum();
    }
  }
  return ts;
}

TimeSeries run_time_series(const ModelParams &p, double t_max, int t_steps,
                           bool include_environment) {
  require_valid(p);
  const auto times = time_grid(t_max, t_steps);
  const BasisMap b(p.N);
  const auto es = diagonalize(build_hamiltonian(p, b));
  const auto c0 = project_initial(es, b, remote(Side::Alpha));
  return sample_occupations(es, c0, b, times, p.hbar, include_environment);
}

double four_level_splitting(const ModelParams &p) {
  // Each symmetry block restricted to {g, w} is [[E_g, c], [c, E_w]].
  auto lower = [&](double c) {
    const double mean = 0.5 * (p.E_g + p.E_w);
    const double half = 0.5 * (p.E_w - p.E_g);
    return mean - std::sqrt(half * half + c * c);
  };
  return std::abs(lower(2 * p.V - p.dV) - lower(p.dV));
}

double four_level_rabi_period(const ModelParams &p) {
  const double split = four_level_splitting(p);
  if (split == 0) throw ComputationError("four-level Rabi splitting vanishes");
  return 2 * std::numbers::pi * p.hbar / split;
}

double continuum_recurrence_time(const ModelParams &p) {
  return 2 * std::numbers::pi * p.hbar / p.d_eps;
}

}  // namespace qtel
