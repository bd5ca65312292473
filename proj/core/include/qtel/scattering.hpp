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

#ifndef QTEL_SCATTERING_HPP
#define QTEL_SCATTERING_HPP

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qtel/model.hpp"
#include "qtel/spectrum.hpp"

// Closed-form perturbative estimates for the coupling of the remote state to
// the continuum, used as oracles against exact diagonalization. Energies
// E_kappa, E_lambda are measured from the energy shell (E_g).

namespace qtel {

struct CouplingEstimates {
  double minus = 0;  // (W / E_w) dV / sqrt(2)
  double plus = 0;   // (W / E_w) (2V - dV) / sqrt(2)
};

/// Throws std::invalid_argument when E_w == 0.
CouplingEstimates coupling_estimates(const ModelParams &p);

struct OnShellElements {
  double g_elem = 0;         // <kappa_perp-|H|g_perp->
  double overlap_scale = 0;  // <kappa-|w_kg-> = W / sqrt(N W^2 + dV^2)
};

/// g_elem = -dV E_kappa / sqrt(N (N - 1) W^2 + N dV^2). Throws for N < 2.
OnShellElements onshell_matrix_elements(const ModelParams &p, double E_kappa);

/// <lambda_perp-|H|kappa_perp-> with its full prefactor,
/// X / (X - W^2) * (E_kappa delta - W^2 / X (E_kappa + E_lambda)),
/// X = N W^2 + dV^2. Throws for N < 2.
double kappa_kappa_element(const ModelParams &p, double E_kappa, double E_lambda,
                           bool same_level);

/// Large-N form E_kappa delta - (E_kappa + E_lambda) / N.
double kappa_kappa_element_large_n(const ModelParams &p, double E_kappa,
                                   double E_lambda, bool same_level);

/// Resummed projection <g_perp-|k~_perp-> = i (d_eps / pi) (dV / W) / E_kappa.
/// Throws std::invalid_argument at the pole E_kappa == 0 or for W == 0.
std::complex<double> dyson_amplitude(const ModelParams &p, double E_kappa);

/// pi / d_eps inside the band |E| < a, 0 outside.
double gamma_in_band(const ModelParams &p, double E);

/// Principal value of int_{-a}^{a} dE' / (E - E') = ln|(E + a) / (E - a)|.
double principal_value_band_integral(double E, double a);

/// Line width from the first (unresummed) Lippmann-Schwinger correction,
/// pi |g_elem(d_eps)|^2 / d_eps.
double second_order_width_estimate(const ModelParams &p);

/// The same on-shell quantities evaluated numerically: the projected states
/// |g_perp->, |kappa_perp-> and |lambda_perp-> are built as vectors in the
/// H- block (block-local ordering) and the matrix elements taken with the
/// given block. `level` and `other_level` are 1-based continuum indices.
struct ProjectedElements {
  double g_elem = 0;        // <kappa_perp-|H|g_perp->
  double kappa_kappa = 0;   // <lambda_perp-|H|kappa_perp->
  double kappa_diag = 0;    // <kappa_perp-|H|kappa_perp->
  double overlap = 0;       // <kappa_perp-|g_perp->
  double e_kappa = 0;       // diagonal energy of kappa- relative to E_g
  double e_lambda = 0;
};

ProjectedElements projected_onshell_elements(const ModelParams &p,
                                             const Eigen::MatrixXd &minus_block,
                                             int level, int other_level);

/// Scalar summary of the chain for reports.
struct PerturbativeEstimates {
  double coupling_minus = 0;
  double coupling_plus = 0;
  double overlap_scale = 0;
  double onshell_slope = 0;        // g_elem / E_kappa
  double dyson_prefactor = 0;      // (d_eps / pi) (dV / W)
  double gamma_in_band = 0;        // 1 / peV
  double second_order_width = 0;   // peV
};

PerturbativeEstimates perturbative_estimates(const ModelParams &p);

struct OverlapRow {
  double energy = 0;         // eigenvalue minus the shell, peV
  double exact_overlap = 0;  // |<g-|k~->|
  double predicted_overlap = 0;
};

struct ExactComparison {
  int states = 0;
  double slope = 0;                // d log|overlap| / d log|E|
  double intercept = 0;
  double prefactor = 0;            // geometric mean of |overlap| |E| (slope -1 form)
  double predicted_prefactor = 0;  // (d_eps / pi) (dV / W)
  double scale_ratio = 0;          // prefactor / predicted_prefactor
  double max_overlap = 0;
  std::vector<OverlapRow> rows;
};

/// Compares exact near-shell overlaps of g- with the eigenstates of H-
/// (block-local ordering, g- at index 0) against dyson_amplitude over
/// 2 d_eps < |E - E_g| < 50 d_eps. Throws ComputationError with fewer than
/// ten such states. When overlaps vanish the regression fields are NaN.
ExactComparison validate_against_exact(const ModelParams &p,
                                       const EigenSystem &minus_block);

}  // namespace qtel

#endif  // QTEL_SCATTERING_HPP
