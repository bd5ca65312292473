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

#include "qtel/model.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "qtel/error.hpp"

namespace qtel {

BasisLabel remote(Side side) { return {StateKind::Remote, side, 0}; }
BasisLabel gateway(Side side) { return {StateKind::Gateway, side, 0}; }
BasisLabel environment(Side side, int level) {
  return {StateKind::Environment, side, level};
}

std::string to_string(const BasisLabel &label) {
  const char *side = label.side == Side::Alpha ? "alpha" : "beta";
  switch (label.kind) {
    case StateKind::Remote:
      return std::string("g_") + side;
    case StateKind::Gateway:
      return std::string("w_") + side;
    case StateKind::Environment:
      return std::string("kappa_") + side + "_" + std::to_string(label.level);
  }
  return {};
}

std::optional<BasisLabel> parse_label(std::string_view text) {
  auto parse_side = [](std::string_view s) -> std::optional<Side> {
    if (s == "alpha") return Side::Alpha;
    if (s == "beta") return Side::Beta;
    return std::nullopt;
  };
  if (text.starts_with("g_")) {
    if (auto s = parse_side(text.substr(2))) return remote(*s);
    return std::nullopt;
  }
  if (text.starts_with("w_")) {
    if (auto s = parse_side(text.substr(2))) return gateway(*s);
    return std::nullopt;
  }
  if (text.starts_with("kappa_")) {
    auto rest = text.substr(6);
    auto sep = rest.find('_');
    if (sep == std::string_view::npos) return std::nullopt;
    auto s = parse_side(rest.substr(0, sep));
    auto digits = rest.substr(sep + 1);
    int level = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), level);
    if (!s || ec != std::errc{} || ptr != digits.data() + digits.size() ||
        level < 1)
      return std::nullopt;
    return environment(*s, level);
  }
  return std::nullopt;
}

ModelParams reference_example(int which) {
  ModelParams p;
  switch (which) {
    case 1:
      p.dV = 0.045;
      break;
    case 2:
      p.dV = 0.018;
      break;
    case 3:
      p.dV = 0.005;
      break;
    default:
      throw std::out_of_range("reference examples are numbered 1..3");
  }
  return p;
}

std::vector<ParamViolation> validate_params(const ModelParams &p) {
  std::vector<ParamViolation> out;
  auto finite = [&](const char *name, double v) {
    if (!std::isfinite(v)) out.push_back({name, std::string(name) + " must be finite"});
  };
  finite("E_g", p.E_g);
  finite("E_w", p.E_w);
  finite("V", p.V);
  finite("dV", p.dV);
  finite("W", p.W);
  finite("d_eps", p.d_eps);
  finite("band_center", p.band_center);
  finite("hbar", p.hbar);

  if (p.V < 0) out.push_back({"V", "V must be non-negative"});
  if (p.W < 0) out.push_back({"W", "W must be non-negative"});
  if (!(p.d_eps > 0)) out.push_back({"d_eps", "d_eps must be positive"});
  if (p.N < 1) out.push_back({"N", "N must be at least 1"});
  if (!(p.hbar > 0)) out.push_back({"hbar", "hbar must be positive"});
  if (p.dV < 0) out.push_back({"dV", "dV must be non-negative"});
  if (p.dV > p.V) out.push_back({"dV", "dV exceeds V"});
  return out;
}

void require_valid(const ModelParams &p) {
  auto violations = validate_params(p);
  if (violations.empty()) return;
  std::string msg = "invalid model parameters:";
  for (const auto &v : violations) msg += " [" + v.field + "] " + v.message + ";";
  throw ConfigError(msg);
}

BasisMap::BasisMap(int n_continuum) : n_(n_continuum) {
  if (n_continuum < 1)
    throw std::invalid_argument("BasisMap needs at least one continuum state");
  labels_.reserve(2 * n_ + 4);
  labels_.push_back(remote(Side::Alpha));
  labels_.push_back(remote(Side::Beta));
  labels_.push_back(gateway(Side::Alpha));
  labels_.push_back(gateway(Side::Beta));
  for (Side s : {Side::Alpha, Side::Beta})
    for (int k = 1; k <= n_; ++k) labels_.push_back(environment(s, k));
}

int BasisMap::index_of(const BasisLabel &label) const {
  switch (label.kind) {
    case StateKind::Remote:
      return remote_index(label.side);
    case StateKind::Gateway:
      return gateway_index(label.side);
    case StateKind::Environment:
      if (label.level < 1 || label.level > n_)
        throw std::out_of_range("no such basis label: " + to_string(label));
      return environment_index(label.side, label.level);
  }
  throw std::out_of_range("no such basis label");
}

std::vector<double> continuum_energies(const ModelParams &p) {
  std::vector<double> eps(p.N, p.band_center);
  if (p.degenerate_continuum) return eps;
  const double mid = 0.5 * (p.N + 1);
  for (int k = 1; k <= p.N; ++k) eps[k - 1] = p.band_center + (k - mid) * p.d_eps;
  return eps;
}

HamiltonianMatrix build_hamiltonian(const ModelParams &p, const BasisMap &b) {
  if (b.continuum_size() != p.N || b.size() != p.dimension())
    throw std::invalid_argument("basis map does not match N = " +
                                std::to_string(p.N));
  const int dim = b.size();
  HamiltonianMatrix h{Eigen::MatrixXd::Zero(dim, dim)};
  auto &m = h.entries;
  auto couple = [&m](int i, int j, double v) {
    m(i, j) = v;
    m(j, i) = v;
  };

  const auto eps = continuum_energies(p);
  for (Side s : {Side::Alpha, Side::Beta}) {
    const Side other = s == Side::Alpha ? Side::Beta : Side::Alpha;
    const int g = b.remote_index(s);
    const int w = b.gateway_index(s);
    m(g, g) = p.E_g;
    m(w, w) = p.E_w;
    couple(g, w, p.V);
    couple(g, b.gateway_index(other), p.V - p.dV);
    for (int k = 1; k <= p.N; ++k) {
      const int kap = b.environment_index(s, k);
      m(kap, kap) = eps[k - 1];
      couple(w, kap, p.W);
    }
  }
  return h;
}

}  // namespace qtel
