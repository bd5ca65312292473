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

#include "qtel/spectrum.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qtel/error.hpp"

namespace qtel {

namespace {

void fix_signs(Eigen::MatrixXd &vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index at = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, j));
      if (a > best) {
        best = a;
        at = i;
      }
    }
    if (vectors(at, j) < 0) vectors.col(j) *= -1.0;
  }
}

}  // namespace

EigenDiagnostics check_eigensystem(const Eigen::MatrixXd &h,
                                   const EigenSystem &es) {
  EigenDiagnostics d;
  const double hmax = h.size() ? h.cwiseAbs().maxCoeff() : 0.0;
  const Eigen::MatrixXd r = h * es.eigenvectors -
                            es.eigenvectors * es.eigenvalues.asDiagonal();
  for (int i = 0; i < es.dim(); ++i) {
    const double scale =
        std::max({1.0, std::abs(es.eigenvalues(i)), hmax});
    d.max_residual = std::max(d.max_residual, r.col(i).norm() / scale);
  }
  const Eigen::MatrixXd gram = es.eigenvectors.transpose() * es.eigenvectors;
  d.max_orthogonality =
      (gram - Eigen::MatrixXd::Identity(es.dim(), es.dim())).cwiseAbs().maxCoeff();
  return d;
}

EigenSystem diagonalize(const Eigen::MatrixXd &h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("diagonalize: matrix is not square");
  if (h.size() == 0) return {};
  const double hmax = h.cwiseAbs().maxCoeff();
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, hmax))
    throw std::invalid_argument("diagonalize: matrix is not symmetric (max |H - H^T| = " +
                                std::to_string(asym) + ")");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "diagonalize: eigen solver did not converge (dim " << h.rows()
       << ", max|H| " << hmax << ", |H|_F " << h.norm() << ")";
    throw ComputationError(os.str());
  }
  EigenSystem es{solver.eigenvalues(), solver.eigenvectors()};
  fix_signs(es.eigenvectors);

  const auto diag = check_eigensystem(h, es);
  if (diag.max_residual > 1e-10 || diag.max_orthogonality > 1e-12) {
    std::ostringstream os;
    os << "diagonalize: verification failed (relative residual "
       << diag.max_residual << ", orthonormality error "
       << diag.max_orthogonality << ", dim " << h.rows() << ")";
    throw ComputationError(os.str());
  }
  return es;
}

EigenSystem diagonalize(const HamiltonianMatrix &h) {
  return diagonalize(h.entries);
}

DegenerateReduction degenerate_reduction(const ModelParams &p) {
  if (p.E_g != p.band_center)
    throw std::invalid_argument(
        "degenerate_reduction: requires the remote level at band_center");
  const double ew = p.E_w - p.band_center;
  const double x = p.N * p.W * p.W + p.dV * p.dV;
  DegenerateReduction r;
  r.E1 = p.band_center;
  if (x == 0 && ew == 0) {
    r.E2 = r.E3 = p.band_center;
    return r;
  }
  const double root = std::sqrt(0.25 * ew * ew + x);
  r.E2 = p.band_center + 0.5 * ew + root;
  r.E3 = p.band_center + 0.5 * ew - root;
  if (x > 0) {
    const double sx = std::sqrt(x);
    r.w_kappa_overlap = p.W / sx;
    r.g_overlap = p.dV / sx;
  }
  return r;
}

double degenerate_e3_leading_order(const ModelParams &p) {
  const double ew = p.E_w - p.band_center;
  if (ew == 0)
    throw std::invalid_argument("degenerate_e3_leading_order: E_w at band_center");
  return -(p.N * p.W * p.W + p.dV * p.dV) / ew;
}

Eigen::VectorXd project_initial(const EigenSystem &es, const BasisMap &b,
                                const BasisLabel &label) {
  if (es.dim() != b.size())
    throw std::invalid_argument("project_initial: eigen system does not match basis");
  return es.eigenvectors.row(b.index_of(label)).transpose();
}

}  // namespace qtel
