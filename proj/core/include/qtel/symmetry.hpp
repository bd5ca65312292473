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

#ifndef QTEL_SYMMETRY_HPP
#define QTEL_SYMMETRY_HPP

#include <vector>

#include <Eigen/Dense>

#include "qtel/model.hpp"

namespace qtel {

// Position of g, w and the first kappa inside either symmetry block.
inline constexpr int kBlockRemote = 0;
inline constexpr int kBlockGateway = 1;
inline constexpr int kBlockEnvironment = 2;

/// Orthogonal map from the input basis to the alpha<->beta adapted basis.
/// Row r of U is the transformed basis vector r expressed in the input
/// basis. Rows 0..N+1 are g+, w+, kappa+_1..N; rows N+2..2N+3 are
/// g-, w-, kappa-_1..N. Every row is (x_alpha +- x_beta) / sqrt(2).
struct SymmetryTransform {
  Eigen::MatrixXd U;
  std::vector<int> plus_indices;
  std::vector<int> minus_indices;

  int dim() const { return static_cast<int>(U.rows()); }
  int block_size() const { return static_cast<int>(plus_indices.size()); }
};

SymmetryTransform build_transform(const BasisMap &b);

/// U H U^T.
HamiltonianMatrix transform_hamiltonian(const HamiltonianMatrix &h,
                                        const SymmetryTransform &t);

struct SymmetryBlocks {
  Eigen::MatrixXd plus;
  Eigen::MatrixXd minus;
};

/// Largest |entry| coupling a plus index to a minus index.
double max_off_block(const HamiltonianMatrix &transformed,
                     const SymmetryTransform &t);

/// Splits a transformed Hamiltonian into H+ and H-. Throws ComputationError
/// when the off-block leakage exceeds relative_tolerance * max|H|, which
/// means the model was assembled without the alpha<->beta symmetry.
SymmetryBlocks extract_blocks(const HamiltonianMatrix &transformed,
                              const SymmetryTransform &t,
                              double relative_tolerance = 1e-12);

/// Direct sum H+ (+) H- laid out in the transformed basis ordering.
Eigen::MatrixXd direct_sum(const SymmetryBlocks &blocks,
                           const SymmetryTransform &t);

}  // namespace qtel

#endif  // QTEL_SYMMETRY_HPP
