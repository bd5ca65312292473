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

#include "qtel/symmetry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qtel/error.hpp"

namespace qtel {

SymmetryTransform build_transform(const BasisMap &b) {
  const int n = b.continuum_size();
  const int dim = b.size();
  const int half = n + 2;
  const double s = 1.0 / std::sqrt(2.0);

  SymmetryTransform t;
  t.U = Eigen::MatrixXd::Zero(dim, dim);

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(half);
  pairs.emplace_back(b.remote_index(Side::Alpha), b.remote_index(Side::Beta));
  pairs.emplace_back(b.gateway_index(Side::Alpha), b.gateway_index(Side::Beta));
  for (int k = 1; k <= n; ++k)
    pairs.emplace_back(b.environment_index(Side::Alpha, k),
                       b.environment_index(Side::Beta, k));

  for (int r = 0; r < half; ++r) {
    const auto [a, bb] = pairs[r];
    t.U(r, a) = s;
    t.U(r, bb) = s;
    t.U(half + r, a) = s;
    t.U(half + r, bb) = -s;
    t.plus_indices.push_back(r);
    t.minus_indices.push_back(half + r);
  }
  return t;
}

HamiltonianMatrix transform_hamiltonian(const HamiltonianMatrix &h,
                                        const SymmetryTransform &t) {
  if (h.dim() != t.dim())
    throw std::invalid_argument("transform_hamiltonian: dimension " +
                                std::to_string(h.dim()) + " vs transform " +
                                std::to_string(t.dim()));
  return {t.U * h.entries * t.U.transpose()};
}

double max_off_block(const HamiltonianMatrix &transformed,
                     const SymmetryTransform &t) {
  const int half = t.block_size();
  return transformed.entries.block(0, half, half, half).cwiseAbs().maxCoeff();
}

SymmetryBlocks extract_blocks(const HamiltonianMatrix &transformed,
                              const SymmetryTransform &t,
                              double relative_tolerance) {
  if (transformed.dim() != t.dim())
    throw std::invalid_argument("extract_blocks: dimension mismatch");
  const int half = t.block_size();
  const double scale = transformed.max_abs();
  const double leak =
      std::max(max_off_block(transformed, t),
               transformed.entries.block(half, 0, half, half).cwiseAbs().maxCoeff());
  if (leak > relative_tolerance * scale)
    throw ComputationError("symmetry blocks leak: max off-block entry " +
                           std::to_string(leak) + " peV exceeds " +
                           std::to_string(relative_tolerance) + " * max|H|");
  return {transformed.entries.topLeftCorner(half, half),
          transformed.entries.bottomRightCorner(half, half)};
}

Eigen::MatrixXd direct_sum(const SymmetryBlocks &blocks,
                           const SymmetryTransform &t) {
  const int half = t.block_size();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(2 * half, 2 * half);
  out.topLeftCorner(half, half) = blocks.plus;
  out.bottomRightCorner(half, half) = blocks.minus;
  return out;
}

}  // namespace qtel
