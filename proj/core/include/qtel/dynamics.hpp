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

#ifndef QTEL_DYNAMICS_HPP
#define QTEL_DYNAMICS_HPP

#include <vector>

#include <Eigen/Dense>

#include "qtel/model.hpp"
#include "qtel/spectrum.hpp"

namespace qtel {

/// State vector over the input basis at time t (seconds).
struct WavePacket {
  double t = 0;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.squaredNorm(); }
};

/// Sampled side occupations on a uniform grid. `norm` holds the total
/// probability at each sample.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> occ_alpha;
  std::vector<double> occ_beta;
  std::vector<double> norm;
  bool include_environment = true;

  std::size_t size() const { return times.size(); }
};

/// amplitudes(t) = sum_I c0_I exp(-i E_I t / hbar) |I>. Negative t is
/// allowed. Throws std::invalid_argument for NaN input, a size mismatch or
/// an initial state whose norm differs from 1 by more than 1e-8.
WavePacket evolve(const EigenSystem &es, const Eigen::VectorXcd &c0, double t,
                  double hbar);
WavePacket evolve(const EigenSystem &es, const Eigen::VectorXd &c0, double t,
                  double hbar);

/// Coefficients <I|psi> of an input-basis state.
Eigen::VectorXcd project_state(const EigenSystem &es,
                               const Eigen::VectorXcd &amplitudes);

/// Probability on the side's g and w states, plus its kappa states when
/// include_environment is set.
double side_occupation(const WavePacket &wp, const BasisMap &b, Side side,
                       bool include_environment);

/// Full density operator |psi><psi|. Debug aid, limited to dim <= 256.
Eigen::MatrixXcd density_operator(const WavePacket &wp);

/// t_i = i * t_max / t_steps, i = 0..t_steps-1. Throws for t_steps < 2.
std::vector<double> time_grid(double t_max, int t_steps);

/// Samples both side occupations for the state with eigen-coefficients c0
/// on the given times. Independent samples are batched into dense products.
TimeSeries sample_occupations(const EigenSystem &es, const Eigen::VectorXd &c0,
                              const BasisMap &b, const std::vector<double> &times,
                              double hbar, bool include_environment);

/// Builds H, diagonalizes, starts in g_alpha and samples the occupations.
TimeSeries run_time_series(const ModelParams &p, double t_max, int t_steps,
                           bool include_environment);

/// Splitting of the two lowest eigenstates of the four g/w states without
/// environment coupling, from the closed-form 2x2 block energies.
double four_level_splitting(const ModelParams &p);

/// 2 pi hbar / four_level_splitting.
double four_level_rabi_period(const ModelParams &p);

/// 2 pi hbar / d_eps: recurrence time of the uniformly spaced continuum.
double continuum_recurrence_time(const ModelParams &p);

}  // namespace qtel

#endif  // QTEL_DYNAMICS_HPP
