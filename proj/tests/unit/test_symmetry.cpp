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

#include <gtest/gtest.h>

#include <random>

#include "qtel/error.hpp"
#include "qtel/model.hpp"
#include "qtel/spectrum.hpp"
#include "qtel/symmetry.hpp"

namespace qtel {
namespace {

ModelParams random_params(std::mt19937 &rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p;
  p.N = 2 + static_cast<int>(u(rng) * 40);
  p.E_w = 0.5 + 2 * u(rng);
  p.V = 0.01 + 0.1 * u(rng);
  p.dV = p.V * u(rng);
  p.W = 0.02 * u(rng);
  p.d_eps = 1e-3 * (0.1 + u(rng));
  return p;
}

TEST(SymmetryTransform, IsOrthogonalWithExpectedRows) {
  const BasisMap b(5);
  const auto t = build_transform(b);
  ASSERT_EQ(t.dim(), 14);
  ASSERT_EQ(t.block_size(), 7);
  const Eigen::MatrixXd id = t.U * t.U.transpose();
  EXPECT_LT((id - Eigen::MatrixXd::Identity(14, 14)).cwiseAbs().maxCoeff(), 1e-15);
  const double r = std::sqrt(0.5);
  const int gp = t.plus_indices[kBlockRemote];
  const int gm = t.minus_indices[kBlockRemote];
  EXPECT_DOUBLE_EQ(t.U(gp, b.remote_index(Side::Alpha)), r);
  EXPECT_DOUBLE_EQ(t.U(gp, b.remote_index(Side::Beta)), r);
  EXPECT_DOUBLE_EQ(t.U(gm, b.remote_index(Side::Alpha)), r);
  EXPECT_DOUBLE_EQ(t.U(gm, b.remote_index(Side::Beta)), -r);
  const int km3 = t.minus_indices[kBlockEnvironment + 2];
  EXPECT_DOUBLE_EQ(t.U(km3, b.environment_index(Side::Alpha, 3)), r);
  EXPECT_DOUBLE_EQ(t.U(km3, b.environment_index(Side::Beta, 3)), -r);
}

TEST(SymmetryTransform, BlocksDecoupleForRandomParameters) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const auto p = random_params(rng);
    const BasisMap b(p.N);
    const auto h = build_hamiltonian(p, b);
    const auto t = build_transform(b);
    const auto th = transform_hamiltonian(h, t);
    EXPECT_LE(max_off_block(th, t), 1e-12 * h.max_abs()) << "trial " << trial;
  }
}

TEST(SymmetryTransform, BlockContents) {
  ModelParams p;
  p.N = 3;
  const BasisMap b(p.N);
  const auto t = build_transform(b);
  const auto blocks = extract_blocks(transform_hamiltonian(build_hamiltonian(p, b), t), t);
  EXPECT_NEAR(blocks.plus(kBlockRemote, kBlockGateway), 2 * p.V - p.dV, 1e-15);
  EXPECT_NEAR(blocks.minus(kBlockRemote, kBlockGateway), p.dV, 1e-15);
  for (int k = 0; k < p.N; ++k) {
    EXPECT_NEAR(blocks.plus(kBlockGateway, kBlockEnvironment + k), p.W, 1e-15);
    EXPECT_NEAR(blocks.minus(kBlockGateway, kBlockEnvironment + k), p.W, 1e-15);
    EXPECT_NEAR(blocks.minus(kBlockRemote, kBlockEnvironment + k), 0.0, 1e-15);
  }
}

TEST(SymmetryTransform, SpectrumPreservedAndReconstructed) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_params(rng);
    const BasisMap b(p.N);
    const auto h = build_hamiltonian(p, b);
    const auto t = build_transform(b);
    const auto th = transform_hamiltonian(h, t);
    const auto blocks = extract_blocks(th, t);
    const Eigen::MatrixXd back = t.U.transpose() * direct_sum(blocks, t) * t.U;
    EXPECT_LT((back - h.entries).cwiseAbs().maxCoeff(), 1e-14);

    const auto full = diagonalize(h).eigenvalues;
    Eigen::VectorXd joined(full.size());
    joined << diagonalize(blocks.plus).eigenvalues, diagonalize(blocks.minus).eigenvalues;
    std::sort(joined.begin(), joined.end());
    EXPECT_LT((joined - full).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(SymmetryTransform, LeakageDetected) {
  ModelParams p;
  p.N = 4;
  const BasisMap b(p.N);
  auto h = build_hamiltonian(p, b);
  h.entries(b.remote_index(Side::Alpha), b.remote_index(Side::Alpha)) += 1e-3;
  const auto t = build_transform(b);
  EXPECT_THROW(extract_blocks(transform_hamiltonian(h, t), t), ComputationError);
  EXPECT_THROW(transform_hamiltonian(h, build_transform(BasisMap(5))), std::invalid_argument);
}

}  // namespace
}  // namespace qtel
