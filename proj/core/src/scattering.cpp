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

#include "qtel/scattering.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qtel/error.hpp"

namespace qtel {

namespace {

double shell_norm(const ModelParams &p) { return p.N * p.W * p.W + p.dV * p.dV; }

void require_two_levels(const ModelParams &p, const char *what) {
  if (p.N < 2) throw std::invalid_argument(std::string(what) + ": needs N >= 2");
}

}  // namespace

CouplingEstimates coupling_estimates(const ModelParams &p) {
  if (p.E_w == 0) throw std::invalid_argument("coupling_estimates: E_w must be nonzero");
  const double f = p.W / p.E_w / std::numbers::sqrt2;
  return {f * p.dV, f * (2 * p.V - p.dV)};
}

OnShellElements onshell_matrix_elements(const ModelParams &p, double E_kappa) {
  require_two_levels(p, "onshell_matrix_elements");
  const double n = p.N;
  const double denom = std::sqrt(n * (n - 1) * p.W * p.W + n * p.dV * p.dV);
  OnShellElements out;
  out.g_elem = denom > 0 ? -p.dV * E_kappa / denom : 0.0;
  const double x = shell_norm(p);
  out.overlap_scale = x > 0 ? p.W / std::sqrt(x) : 0.0;
  return out;
}

double kappa_kappa_element(const ModelParams &p, double E_kappa, double E_lambda,
                           bool same_level) {
  require_two_levels(p, "kappa_kappa_element");
  const double x = shell_norm(p);
  if (x == 0) return same_level ? E_kappa : 0.0;
  const double w2 = p.W * p.W;
  const double diag = same_level ? E_kappa : 0.0;
  return x / (x - w2) * (diag - w2 / x * (E_kappa + E_lambda));
}

double kappa_kappa_element_large_n(const ModelParams &p, double E_kappa,
                                   double E_lambda, bool same_level) {
  return (same_level ? E_kappa : 0.0) - (E_kappa + E_lambda) / p.N;
}

std::complex<double> dyson_amplitude(const ModelParams &p, double E_kappa) {
  if (E_kappa == 0)
    throw std::invalid_argument("dyson_amplitude: pole at the energy shell");
  if (p.W == 0) throw std::invalid_argument("dyson_amplitude: W must be nonzero");
  return {0.0, p.d_eps / std::numbers::pi * (p.dV / p.W) / E_kappa};
}

double gamma_in_band(const ModelParams &p, double E) {
  return std::abs(E) < p.band_half_width() ? std::numbers::pi / p.d_eps : 0.0;
}

double principal_value_band_integral(double E, double a) {
  return std::log(std::abs((E + a) / (E - a)));
}

double second_order_width_estimate(const ModelParams &p) {
  const double g = onshell_matrix_elements(p, p.d_eps).g_elem;
  return std::numbers::pi * g * g / p.d_eps;
}

PerturbativeEstimates perturbative_estimates(const ModelParams &p) {
  PerturbativeEstimates e;
  const auto c = coupling_estimates(p);
  e.coupling_minus = c.minus;
  e.coupling_plus = c.plus;
  const auto on = onshell_matrix_elements(p, 1.0);
  e.overlap_scale = on.overlap_scale;
  e.onshell_slope = on.g_elem;
  e.dyson_prefactor = p.W != 0 ? p.d_eps / std::numbers::pi * p.dV / p.W : 0.0;
  e.gamma_in_band = gamma_in_band(p, 0.0);
  e.second_order_width = second_order_width_estimate(p);
  return e;
}

ProjectedElements projected_onshell_elements(const ModelParams &p,
                                             const Eigen::MatrixXd &minus_block,
                                             int level, int other_level) {
  require_two_levels(p, "projected_onshell_elements");
  const int n = p.N;
  if (minus_block.rows() != n + 2 || minus_block.cols() != n + 2)
    throw std::invalid_argument("projected_onshell_elements: expected the (N+2) minus block");
  if (level < 1 || level > n || other_level < 1 || other_level > n || level == other_level)
    throw std::invalid_argument("projected_onshell_elements: levels must be distinct in 1..N");
  const double x = shell_norm(p);
  if (!(p.W > 0)) throw std::invalid_argument("projected_onshell_elements: W must be positive");

  const int dim = n + 2;
  Eigen::VectorXd g = Eigen::VectorXd::Zero(dim);
  g(0) = 1;
  Eigen::VectorXd w_kappa = Eigen::VectorXd::Zero(dim);
  w_kappa.tail(n).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  const Eigen::VectorXd w_kg = (std::sqrt(static_cast<double>(n)) * p.W * w_kappa + p.dV * g) / std::sqrt(x);
  const Eigen::VectorXd g_perp = std::sqrt(x / (n * p.W * p.W)) * (g - w_kg.dot(g) * w_kg);

  auto kappa_perp = [&](int k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(1 + k) = 1;
    const double ov = p.W / std::sqrt(x);
    return Eigen::VectorXd((v - ov * w_kg) / std::sqrt(1 - ov * ov));
  };
  const Eigen::VectorXd kap = kappa_perp(level);
  const Eigen::VectorXd lam = kappa_perp(other_level);

  ProjectedElements out;
  out.g_elem = kap.dot(minus_block * g_perp);
  out.kappa_kappa = lam.dot(minus_block * kap);
  out.kappa_diag = kap.dot(minus_block * kap);
  out.overlap = kap.dot(g_perp);
  out.e_kappa = minus_block(1 + level, 1 + level) - p.E_g;
  out.e_lambda = minus_block(1 + other_level, 1 + other_level) - p.E_g;
  return out;
}

ExactComparison validate_against_exact(const ModelParams &p,
                                       const EigenSystem &minus_block) {
  if (minus_block.dim() != p.N + 2)
    throw std::invalid_argument("validate_against_exact: expected the (N+2) minus block");
  const double predicted = p.W != 0 ? p.d_eps / std::numbers::pi * p.dV / p.W : 0.0;

  ExactComparison out;
  out.predicted_prefactor = predicted;
  for (int i = 0; i < minus_block.dim(); ++i) {
    const double e = minus_block.eigenvalues(i) - p.E_g;
    const double ae = std::abs(e);
    if (!(ae > 2 * p.d_eps && ae < 50 * p.d_eps)) continue;
    const double ov = std::abs(minus_block.eigenvectors(0, i));
    out.rows.push_back({e, ov, predicted / ae});
    out.max_overlap = std::max(out.max_overlap, ov);
  }
  out.states = static_cast<int>(out.rows.size());
  if (out.states < 10)
    throw ComputationError("validate_against_exact: only " + std::to_string(out.states) +
                           " near-shell states, need at least 10");

  double sx = 0, sy = 0, sxx = 0, sxy = 0, slog = 0;
  int n = 0;
  for (const auto &r : out.rows) {
    if (!(r.exact_overlap > 0)) continue;
    const double lx = std::log(std::abs(r.energy));
    const double ly = std::log(r.exact_overlap);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    slog += ly + lx;
    ++n;
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  // Overlaps at rounding level carry no shape information.
  if (n < 2 || out.max_overlap < 1e-12) {
    out.slope = out.intercept = out.prefactor = out.scale_ratio = nan;
    return out;
  }
  const double det = n * sxx - sx * sx;
  out.slope = (n * sxy - sx * sy) / det;
  out.intercept = (sy - out.slope * sx) / n;
  out.prefactor = std::exp(slog / n);
  out.scale_ratio = predicted > 0 ? out.prefactor / predicted : nan;
  return out;
}

}  // namespace qtel
