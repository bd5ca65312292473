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

#ifndef QTEL_SPECTRAL_HPP
#define QTEL_SPECTRAL_HPP

#include <complex>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "qtel/model.hpp"
#include "qtel/spectrum.hpp"
#include "qtel/symmetry.hpp"

namespace qtel {

enum class Branch { Plus, Minus, Mixed };

std::string_view to_string(Branch b);

struct SpectralEntry {
  double energy = 0;  // peV
  double weight = 0;  // |<I|g_alpha>|^2
  Branch branch = Branch::Mixed;
};

/// Discrete spectral distribution of g_alpha: one entry per eigenstate,
/// ascending in energy. Densities are weight / d_eps.
struct SpectralDistribution {
  std::vector<SpectralEntry> entries;

  double total_weight() const;
};

/// `es` is an eigen system in the input basis. An eigenstate is assigned to
/// a branch when at least 99% of its norm lies in that symmetry block.
SpectralDistribution spectral_distribution(const EigenSystem &es,
                                           const SymmetryTransform &t,
                                           const BasisMap &b);

/// Maps block eigen systems (in the block-local g, w, kappa ordering) back
/// to a single input-basis eigen system, ascending in energy.
EigenSystem lift_blocks(const EigenSystem &plus, const EigenSystem &minus,
                        const SymmetryTransform &t);

/// Energy and squared coupling |<k~|H|g>|^2 of one eigenstate of a
/// coupled continuum.
struct LevelCoupling {
  double energy = 0;
  double coupling_sq = 0;
};

/// Eigenstates of the environment of the remote state g+ or g- (the w and
/// kappa states of one symmetry block) with their couplings to that remote
/// state, |<k~|H|g>|^2 = c^2 |<k~|w>|^2, c = 2V - dV (plus) or dV (minus).
std::vector<LevelCoupling> environment_couplings(const ModelParams &p,
                                                 Branch branch);

struct SelfEnergy {
  std::complex<double> value;
  bool in_band = true;
};

/// Sigma(E) = P sum_k |c_k|^2 / (E - E_k) - i pi <|c|^2>_local / d_eps.
/// The principal value drops the level(s) nearest to E (ties dropped
/// together); the local average runs over the `average_levels` levels
/// nearest to E. Outside band_center +- a the imaginary part is zero and
/// `in_band` is false.
SelfEnergy self_energy(const ModelParams &p, std::span<const LevelCoupling> couplings,
                       double E, int average_levels = 8);

/// -Im G / pi for G = 1 / (E - level - sigma).
double lorentzian_density(double E, double level, std::complex<double> sigma);

/// lorentzian_density(E, E_g, self_energy(p, couplings, E)).
double green_density(const ModelParams &p, std::span<const LevelCoupling> couplings,
                     double E);

struct LorentzianFit {
  double center = 0;      // peV
  double half_width = 0;  // HWHM, peV
  double amplitude = 0;   // integrated weight
  double rms_residual = 0;
  int points = 0;
  int iterations = 0;
  bool converged = false;
};

struct FitOptions {
  double spacing = 0;  // level spacing used to turn weights into densities
  double window_lo = -std::numeric_limits<double>::infinity();
  double window_hi = std::numeric_limits<double>::infinity();
  double relative_floor = 1e-6;
  int max_iterations = 200;
};

/// Least-squares fit of weight / spacing to
/// amplitude * (gamma / pi) / ((E - center)^2 + gamma^2) over the branch
/// entries inside the window whose weight exceeds relative_floor * max.
/// Starts from the weighted mean and weighted RMS spread. Throws
/// ComputationError with fewer than five usable points; a fit that does not
/// converge within the budget is returned with converged = false.
LorentzianFit fit_lorentzian(const SpectralDistribution &sd, Branch branch,
                             const FitOptions &options);

/// Fit options for a model: spacing d_eps, window band_center +- (a + d_eps).
FitOptions band_fit_options(const ModelParams &p);

}  // namespace qtel

#endif  // QTEL_SPECTRAL_HPP
