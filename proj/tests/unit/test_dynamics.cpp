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

#include <numbers>
#include <random>

#include "oracles/oracles.hpp"
#include "qtel/dynamics.hpp"
#include "qtel/model.hpp"
#include "qtel/spectral.hpp"
#include "qtel/spectrum.hpp"
#include "qtel/symmetry.hpp"

namespace qtel {
namespace {

ModelParams small_params() {
  ModelParams p;
  p.N = 12;
  p.d_eps = 2e-3;
  p.W = 0.01;
  return p;
}

TEST(Evolve, IdentityAtTimeZero) {
  const auto p = small_params();
  const BasisMap b(p.N);
  const auto es = diagonalize(build_hamiltonian(p, b));
  const auto c0 = project_initial(es, b, remote(Side::Alpha));
  const auto wp = evolve(es, c0, 0.0, p.hbar);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(b.size());
  e0(0) = 1;
  EXPECT_LT((wp.amplitudes - e0).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Evolve, TwoStateRabiSolution) {
  const double v = 0.03, hbar = kHbarPeVSeconds;
  Eigen::Matrix2d h;
  h << 0, v, v, 0;
  const auto es = diagonalize(Eigen::MatrixXd(h));
  Eigen::VectorXd start(2);
  start << 1, 0;
  const Eigen::VectorXd c0 = es.eigenvectors.transpose() * start;
  for (double t : {0.0, 0.01, 0.037, 0.5, 3.0, -0.2}) {
    const auto wp = evolve(es, c0, t, hbar);
    EXPECT_NEAR(std::norm(wp.amplitudes(0)), oracle::two_state_rabi(v, t, hbar), 1e-12) << t;
  }
}

TEST(Evolve, MatchesMatrixExponential) {
  const auto p = small_params();
  const BasisMap b(p.N);
  const auto h = build_hamiltonian(p, b);
  const auto es = diagonalize(h);
  const auto c0 = project_initial(es, b, remote(Side::Alpha));
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(b.size());
  e0(0) = 1;
  for (double t : {0.05, 1.3, 40.0}) {
    const Eigen::VectorXcd ref = oracle::propagator(h.entries, t, p.hbar) * e0;
    const auto wp = evolve(es, c0, t, p.hbar);
    EXPECT_LT((wp.amplitudes - ref).cwiseAbs().maxCoeff(), 1e-9) << t;
  }
}

TEST(Evolve, TimeReversal) {
  const auto p = reference_example(2);
  const BasisMap b(p.N);
  const auto es = diagonalize(build_hamiltonian(p, b));
  const auto c0 = project_initial(es, b, remote(Side::Alpha));
  for (double t : {17.0, 1900.0, 7999.0}) {
    const auto fwd = evolve(es, c0, t, p.hbar);
    const auto back = evolve(es, project_state(es, fwd.amplitudes), -t, p.hbar);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(b.size());
    e0(0) = 1;
    EXPECT_LT((back.amplitudes - e0).cwiseAbs().maxCoeff(), 1e-9) << t;
    EXPECT_NEAR(fwd.norm(), 1.0, 1e-10);
  }
}

TEST(Evolve, RejectsInvalidInput) {
  const auto p = small_params();
  const BasisMap b(p.N);
  const auto es = diagonalize(build_hamiltonian(p, b));
  Eigen::VectorXd c = project_initial(es, b, remote(Side::Alpha));
  EXPECT_THROW(evolve(es, Eigen::VectorXd(c * 2), 1.0, p.hbar), std::invalid_argument);
  EXPECT_THROW(evolve(es, Eigen::VectorXd(c.head(3)), 1.0, p.hbar), std::invalid_argument);
  EXPECT_THROW(evolve(es, c, std::nan(""), p.hbar), std::invalid_argument);
  c(1) = std::nan("");
  EXPECT_THROW(evolve(es, c, 1.0, p.hbar), std::invalid_argument);
}

TEST(SideOccupation, InitialAndTrace) {
  const auto p = small_params();
  const BasisMap b(p.N);
  const auto es = diagonalize(build_hamiltonian(p, b));
  const auto c0 = project_initial(es, b, remote(Side::Alpha));
  const auto wp0 = evolve(es, c0, 0.0, p.hbar);
  for (bool env : {false, true}) {
    EXPECT_NEAR(side_occupation(wp0, b, Side::Alpha, env), 1.0, 1e-14);
    EXPECT_NEAR(side_occupation(wp0, b, Side::Beta, env), 0.0, 1e-14);
  }
  const auto wp = evolve(es, c0, 25.0, p.hbar);
  EXPECT_NEAR(side_occupation(wp, b, Side::Alpha, true) + side_occupation(wp, b, Side::Beta, true),
              1.0, 1e-12);
  EXPECT_LE(side_occupation(wp, b, Side::Alpha, false), side_occupation(wp, b, Side::Alpha, true));
}

TEST(DensityOperator, DiagonalGivesOccupations) {
  const auto p = small_params();
  const BasisMap b(p.N);
  const auto es = diagonalize(build_hamiltonian(p, b));
  const auto wp = evolve(es, project_initial(es, b, remote(Side::Alpha)), 3.0, p.hbar);
  const auto rho = density_operator(wp);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-13);
  EXPECT_NEAR(rho(0, 0).real() + rho(2, 2).real(), side_occupation(wp, b, Side::Alpha, false),
              1e-14);
  EXPECT_LT((rho * rho - rho).cwiseAbs().maxCoeff(), 1e-13);
  WavePacket big{0, Eigen::VectorXcd::Zero(300)};
  EXPECT_THROW(density_operator(big), std::invalid_argument);
}

TEST(TimeGrid, UniformFromZero) {
  const auto g = time_grid(8000, 4000);
  ASSERT_EQ(g.size(), 4000u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_DOUBLE_EQ(g[1], 2.0);
  EXPECT_DOUBLE_EQ(g.back(), 7998.0);
  EXPECT_THROW(time_grid(10, 1), std::invalid_argument);
}

TEST(SampleOccupations, MatchesPointwiseEvolution) {
  const auto p = reference_example(2);
  const BasisMap b(p.N);
  const auto es = diagonalize(build_hamiltonian(p, b));
  const auto c0 = project_initial(es, b, remote(Side::Alpha));
  std::vector<double> times;
  for (int i = 0; i < 600; ++i) times.push_back(13.7 * i);
  const auto ts = sample_occupations(es, c0, b, times, p.hbar, true);
  ASSERT_EQ(ts.size(), times.size());
  for (std::size_t i = 0; i < times.size(); i += 37) {
    const auto wp = evolve(es, c0, times[i], p.hbar);
    EXPECT_NEAR(ts.occ_alpha[i], side_occupation(wp, b, Side::Alpha, true), 1e-12);
    EXPECT_NEAR(ts.occ_beta[i], side_occupation(wp, b, Side::Beta, true), 1e-12);
  }
}

TEST(SampleOccupations, BlockLiftedSystemAgreesWithFull) {
  const auto p = reference_example(1);
  const BasisMap b(p.N);
  const auto t = build_transform(b);
  const auto blocks = extract_blocks(transform_hamiltonian(build_hamiltonian(p, b), t), t);
  const auto lifted = lift_blocks(diagonalize(blocks.plus), diagonalize(blocks.minus), t);
  const auto full = diagonalize(build_hamiltonian(p, b));
  const auto times = time_grid(4000, 200);
  const auto a = sample_occupations(lifted, project_initial(lifted, b, remote(Side::Alpha)), b,
                                    times, p.hbar, true);
  const auto r = sample_occupations(full, project_initial(full, b, remote(Side::Alpha)), b,
                                    times, p.hbar, true);
  for (std::size_t i = 0; i < times.size(); ++i) EXPECT_NEAR(a.occ_alpha[i], r.occ_alpha[i], 1e-9);
}

TEST(RunTimeSeries, NoEnvironmentCouplingKeepsContinuumEmpty) {
  auto p = reference_example(2);
  p.W = 0;
  const BasisMap b(p.N);
  const auto es = diagonalize(build_hamiltonian(p, b));
  const auto c0 = project_initial(es, b, remote(Side::Alpha));
  for (double t : {0.7, 100.0, 4321.0}) {
    const auto wp = evolve(es, c0, t, p.hbar);
    EXPECT_LE(wp.amplitudes.tail(2 * p.N).cwiseAbs().maxCoeff(), 1e-12);
  }
  const auto with = run_time_series(p, 10, 100, true);
  const auto without = run_time_series(p, 10, 100, false);
  for (std::size_t i = 0; i < with.size(); ++i)
    EXPECT_NEAR(with.occ_alpha[i], without.occ_alpha[i], 1e-12);
}

TEST(FourLevel, PeriodMatchesNumericalDiagonalization) {
  for (int which : {1, 2, 3}) {
    const auto p = reference_example(which);
    EXPECT_NEAR(four_level_rabi_period(p) / oracle::four_level_period(p), 1.0, 1e-9) << which;
  }
  EXPECT_NEAR(four_level_rabi_period(reference_example(2)), 1.617, 1e-3);
}

TEST(FourLevel, W0SeriesOscillatesWithPredictedPeriod) {
  auto p = reference_example(2);
  p.W = 0;
  const double period = four_level_rabi_period(p);
  const auto ts = run_time_series(p, 20 * period, 4000, false);
  double lo = 1;
  for (double x : ts.occ_alpha) lo = std::min(lo, x);
  EXPECT_LT(lo, 0.05);
  // Return to the start side after one full period, up to the fast w admixture.
  const auto es = diagonalize(build_hamiltonian(p, BasisMap(p.N)));
  const BasisMap b(p.N);
  const auto wp = evolve(es, project_initial(es, b, remote(Side::Alpha)), period, p.hbar);
  EXPECT_GT(side_occupation(wp, b, Side::Alpha, false), 0.98);
}

TEST(ContinuumRecurrence, DefaultValue) {
  EXPECT_NEAR(continuum_recurrence_time(reference_example(2)), 1862.9, 0.1);
  EXPECT_NEAR(continuum_recurrence_time(reference_example(2)),
              2 * std::numbers::pi * kHbarPeVSeconds / 2.22e-6, 1e-9);
}

}  // namespace
}  // namespace qtel
