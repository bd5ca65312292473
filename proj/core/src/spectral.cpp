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

#include "qtel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qtel/error.hpp"

namespace qtel {

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Plus:
      return "plus";
    case Branch::Minus:
      return "minus";
    case Branch::Mixed:
      return "mixed";
  }
  return "mixed";
}

double SpectralDistribution::total_weight() const {
  double s = 0;
  for (const auto &e : entries) s += e.weight;
  return s;
}

SpectralDistribution spectral_distribution(const EigenSystem &es,
                                           const SymmetryTransform &t,
                                           const BasisMap &b) {
  if (es.dim() != b.size() || t.dim() != b.size())
    throw std::invalid_argument("spectral_distribution: dimension mismatch");
  const int half = t.block_size();
  const Eigen::MatrixXd adapted = t.U * es.eigenvectors;
  const int g = b.remote_index(Side::Alpha);

  SpectralDistribution sd;
  sd.entries.reserve(es.dim());
  for (int i = 0; i < es.dim(); ++i) {
    const double minus_norm = adapted.col(i).tail(half).squaredNorm();
    const double total = adapted.col(i).squaredNorm();
    Branch br = Branch::Mixed;
    if (minus_norm >= 0.99 * total)
      br = Branch::Minus;
    else if (total - minus_norm >= 0.99 * total)
      br = Branch::Plus;
    const double c = es.eigenvectors(g, i);
    sd.entries.push_back({es.eigenvalues(i), c * c, br});
  }
  return sd;
}

EigenSystem lift_blocks(const EigenSystem &plus, const EigenSystem &minus,
                        const SymmetryTransform &t) {
  const int half = t.block_size();
  if (plus.dim() != half || minus.dim() != half)
    throw std::invalid_argument("lift_blocks: block sizes do not match transform");
  const Eigen::MatrixXd up = t.U.topRows(half).transpose() * plus.eigenvectors;
  const Eigen::MatrixXd um = t.U.bottomRows(half).transpose() * minus.eigenvectors;

  std::vector<int> order(2 * half);
  std::iota(order.begin(), order.end(), 0);
  auto energy = [&](int k) {
    return k < half ? plus.eigenvalues(k) : minus.eigenvalues(k - half);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int bb) { return energy(a) < energy(bb); });

  EigenSystem out{Eigen::VectorXd(2 * half), Eigen::MatrixXd(2 * half, 2 * half)};
  for (int j = 0; j < 2 * half; ++j) {
    const int k = order[j];
    out.eigenvalues(j) = energy(k);
    out.eigenvectors.col(j) = k < half ? up.col(k) : um.col(k - half);
  }
  return out;
}

std::vector<LevelCoupling> environment_couplings(const ModelParams &p,
                                                 Branch branch) {
  if (branch == Branch::Mixed)
    throw std::invalid_argument("environment_couplings: branch must be plus or minus");
  require_valid(p);
  const auto eps = continuum_energies(p);
  const int n = p.N;
  Eigen::MatrixXd env = Eigen::MatrixXd::Zero(n + 1, n + 1);
  env(0, 0) = p.E_w;
  for (int k = 0; k < n; ++k) {
    env(k + 1, k + 1) = eps[k];
    env(0, k + 1) = p.W;
    env(k + 1, 0) = p.W;
  }
  const auto es = diagonalize(env);
  const double c = branch == Branch::Plus ? 2 * p.V - p.dV : p.dV;

  std::vector<LevelCoupling> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double w = es.eigenvectors(0, i);
    out[i] = {es.eigenvalues(i), c * c * w * w};
  }
  return out;
}

SelfEnergy self_energy(const ModelParams &p, std::span<const LevelCoupling> couplings,
                       double E, int average_levels) {
  SelfEnergy out{{0.0, 0.0}, std::abs(E - p.band_center) <= p.band_half_width()};
  if (couplings.empty()) return out;

  std::vector<std::size_t> by_distance(couplings.size());
  std::iota(by_distance.begin(), by_distance.end(), 0);
  std::stable_sort(by_distance.begin(), by_distance.end(), [&](auto a, auto b) {
    return std::abs(E - couplings[a].energy) < std::abs(E - couplings[b].energy);
  });
  const double nearest = std::abs(E - couplings[by_distance.front()].energy);
  const double cutoff = nearest * (1 + 1e-9);

  double re = 0;
  for (const auto &c : couplings) {
    if (std::abs(E - c.energy) <= cutoff) continue;
    re += c.coupling_sq / (E - c.energy);
  }

  double im = 0;
  if (out.in_band) {
    const std::size_t m =
        std::min<std::size_t>(std::max(average_levels, 1), couplings.size());
    double avg = 0;
    for (std::size_t i = 0; i < m; ++i) avg += couplings[by_distance[i]].coupling_sq;
    avg /= static_cast<double>(m);
    im = -std::numbers::pi * avg / p.d_eps;
  }
  out.value = {re, im};
  return out;
}

double lorentzian_density(double E, double level, std::complex<double> sigma) {
  const double x = E - level - sigma.real();
  const double y = sigma.imag();
  // Im G = Im Sigma / (x^2 + Im Sigma^2)
  return -(y / (x * x + y * y)) / std::numbers::pi;
}

double green_density(const ModelParams &p, std::span<const LevelCoupling> couplings,
                     double E) {
  return lorentzian_density(E, p.E_g, self_energy(p, couplings, E).value);
}

FitOptions band_fit_options(const ModelParams &p) {
  FitOptions o;
  o.spacing = p.d_eps;
  o.window_lo = p.band_center - p.band_half_width() - p.d_eps;
  o.window_hi = p.band_center + p.band_half_width() + p.d_eps;
  return o;
}

namespace {

// Lorentzian in scaled coordinates: a * (g / pi) / ((x - m)^2 + g^2).
struct Scaled {
  double a, m, g;
};

double model(const Scaled &s, double x) {
  const double d = (x - s.m) * (x - s.m) + s.g * s.g;
  return s.a * (s.g / std::numbers::pi) / d;
}

double cost(const Scaled &s, const std::vector<double> &x, const std::vector<double> &y) {
  double c = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = model(s, x[i]) - y[i];
    c += r * r;
  }
  return c;
}

}  // namespace

LorentzianFit fit_lorentzian(const SpectralDistribution &sd, Branch branch,
                             const FitOptions &options) {
  if (!(options.spacing > 0))
    throw std::invalid_argument("fit_lorentzian: spacing must be positive");

  std::vector<const SpectralEntry *> sel;
  double wmax = 0;
  for (const auto &e : sd.entries)
    if (e.branch == branch && e.energy >= options.window_lo && e.energy <= options.window_hi) {
      sel.push_back(&e);
      wmax = std::max(wmax, e.weight);
    }
  std::erase_if(sel, [&](const SpectralEntry *e) {
    return !(e->weight > options.relative_floor * wmax);
  });
  if (sel.size() < 5)
    throw ComputationError("fit_lorentzian: " + std::to_string(sel.size()) +
                           " usable points in branch " + std::string(to_string(branch)) +
                           ", need at least 5");

  double sy = 0, sey = 0, sw = 0;
  for (const auto *e : sel) {
    const double y = e->weight / options.spacing;
    sy += y;
    sey += e->energy * y;
    sw += e->weight;
  }
  const double c0 = sey / sy;
  double spread = 0;
  for (const auto *e : sel) spread += (e->energy - c0) * (e->energy - c0) * e->weight / options.spacing;
  spread = std::sqrt(spread / sy);
  if (!(spread > 0)) spread = options.spacing;

  const double ymax = wmax / options.spacing;
  std::vector<double> x(sel.size()), y(sel.size());
  for (std::size_t i = 0; i < sel.size(); ++i) {
    x[i] = (sel[i]->energy - c0) / spread;
    y[i] = sel[i]->weight / options.spacing / ymax;
  }

  Scaled s{sw / (spread * ymax), 0.0, 1.0};
  double current = cost(s, x, y);
  double lambda = 1e-3;
  LorentzianFit fit;
  fit.points = static_cast<int>(sel.size());

  for (int it = 0; it < options.max_iterations; ++it) {
    fit.iterations = it + 1;
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double dx = x[i] - s.m;
      const double d = dx * dx + s.g * s.g;
      Eigen::Vector3d j;
      j(0) = s.g / (std::numbers::pi * d);
      j(1) = s.a * s.g / std::numbers::pi * 2 * dx / (d * d);
      j(2) = s.a / std::numbers::pi * (dx * dx - s.g * s.g) / (d * d);
      const double r = model(s, x[i]) - y[i];
      jtj += j * j.transpose();
      jtr += j * r;
    }
    bool accepted = false;
    while (lambda < 1e16) {
      Eigen::Matrix3d a = jtj;
      for (int k = 0; k < 3; ++k) a(k, k) += lambda * std::max(jtj(k, k), 1e-300);
      const Eigen::Vector3d step = a.ldlt().solve(-jtr);
      const Scaled trial{s.a + step(0), s.m + step(1), s.g + step(2)};
      const double trial_cost = trial.g > 0 ? cost(trial, x, y) : INFINITY;
      if (trial_cost <= current) {
        const double rel = std::max({std::abs(step(0)) / (std::abs(s.a) + 1e-12),
                                     std::abs(step(1)) / (std::abs(s.g) + 1e-12),
                                     std::abs(step(2)) / (std::abs(s.g) + 1e-12)});
        s = trial;
        current = trial_cost;
        lambda = std::max(lambda / 10, 1e-12);
        accepted = true;
        if (rel < 1e-12) fit.converged = true;
        break;
      }
      lambda *= 10;
    }
    if (!accepted) {
      // No downhill step at any damping: the current point is a minimum to
      // working precision.
      fit.converged = true;
    }
    if (fit.converged) break;
  }

  fit.center = c0 + s.m * spread;
  fit.half_width = s.g * spread;
  fit.amplitude = s.a * spread * ymax;
  fit.rms_residual = std::sqrt(current / static_cast<double>(x.size())) * ymax;
  return fit;
}

}  // namespace qtel
