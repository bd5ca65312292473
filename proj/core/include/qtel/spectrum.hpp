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

#ifndef QTEL_SPECTRUM_HPP
#define QTEL_SPECTRUM_HPP

#include <Eigen/Dense>

#include "qtel/model.hpp"

namespace qtel {

/// Eigenvalues ascending; column I of `eigenvectors` is |I> in the basis of
/// the diagonalized matrix. Each column's largest-magnitude component is
/// positive (first such component on ties).
struct EigenSystem {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

struct EigenDiagnostics {
  double max_residual = 0;        // max_I |H v_I - E_I v_I|_2 / max(1, |E_I|, max|H|)
  double max_orthogonality = 0;   // max_IJ |<v_I|v_J> - delta_IJ|
};

/// Dense symmetric eigendecomposition with explicit residual and
/// orthonormality verification. Throws std::invalid_argument for a
/// non-square or non-symmetric input and ComputationError when the solver
/// fails or the checks exceed 1e-10 (residual) / 1e-12 (orthonormality).
EigenSystem diagonalize(const Eigen::MatrixXd &h);
EigenSystem diagonalize(const HamiltonianMatrix &h);

EigenDiagnostics check_eigensystem(const Eigen::MatrixXd &h,
                                   const EigenSystem &es);

/// Closed-form spectrum of the antisymmetric block when all environmental
/// levels are degenerate. Energies are absolute (peV); the reduction is
/// carried out relative to band_center, which must coincide with E_g.
struct DegenerateReduction {
  double E1 = 0;
  double E2 = 0;
  double E3 = 0;
  double w_kappa_overlap = 0;  // <kappa-|w_kg->
  double g_overlap = 0;        // <g-|w_kg->
};

DegenerateReduction degenerate_reduction(const ModelParams &p);

/// E3 to leading order, -(N W^2 + dV^2) / E_w, relative to band_center.
double degenerate_e3_leading_order(const ModelParams &p);

/// c_I = <I|label>. Throws std::out_of_range for an unknown label.
Eigen::VectorXd project_initial(const EigenSystem &es, const BasisMap &b,
                                const BasisLabel &label);

}  // namespace qtel

#endif  // QTEL_SPECTRUM_HPP
