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

#ifndef QTEL_MODEL_HPP
#define QTEL_MODEL_HPP

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qtel {

/// Reduced Planck constant in peV * s.
inline constexpr double kHbarPeVSeconds = 6.582119569e-4;

enum class Side { Alpha, Beta };

enum class StateKind { Remote, Gateway, Environment };

/// One state of the single-particle basis. `level` runs 1..N for
/// environmental states and is 0 otherwise.
struct BasisLabel {
  StateKind kind = StateKind::Remote;
  Side side = Side::Alpha;
  int level = 0;

  auto operator<=>(const BasisLabel &) const = default;
};

BasisLabel remote(Side side);
BasisLabel gateway(Side side);
BasisLabel environment(Side side, int level);

/// "g_alpha", "w_beta", "kappa_alpha_12", ...
std::string to_string(const BasisLabel &label);
std::optional<BasisLabel> parse_label(std::string_view text);

/// Physical parameters plus discretization choices. Energies in peV,
/// hbar in peV * s. Defaults are the telegraph-regime parameter set.
struct ModelParams {
  double E_g = 0.0;
  double E_w = 2.5;
  double V = 0.05;
  double dV = 0.018;
  double W = 0.00707;
  double d_eps = 2.22e-6;
  int N = 398;
  double band_center = 0.0;
  double hbar = kHbarPeVSeconds;
  /// All environmental levels collapse onto band_center.
  bool degenerate_continuum = false;

  int dimension() const { return 2 * N + 4; }
  /// Half of the continuum bandwidth, a = N * d_eps / 2.
  double band_half_width() const { return 0.5 * N * d_eps; }
};

/// The three reference parameter sets (1: slow Rabi, 2: telegraph,
/// 3: bonding). Throws std::out_of_range for anything else.
ModelParams reference_example(int which);

struct ParamViolation {
  std::string field;
  std::string message;
};

std::vector<ParamViolation> validate_params(const ModelParams &p);

/// Throws ConfigError listing every violation.
void require_valid(const ModelParams &p);

/// Fixed ordering: g_alpha, g_beta, w_alpha, w_beta, kappa_alpha_1..N,
/// kappa_beta_1..N.
class BasisMap {
 public:
  explicit BasisMap(int n_continuum);

  int size() const { return static_cast<int>(labels_.size()); }
  int continuum_size() const { return n_; }

  /// Throws std::out_of_range for labels outside this basis.
  int index_of(const BasisLabel &label) const;
  const BasisLabel &label(int index) const { return labels_.at(index); }
  std::span<const BasisLabel> labels() const { return labels_; }

  int remote_index(Side s) const { return s == Side::Alpha ? 0 : 1; }
  int gateway_index(Side s) const { return s == Side::Alpha ? 2 : 3; }
  /// level is 1-based.
  int environment_index(Side s, int level) const {
    return 4 + (s == Side::Alpha ? 0 : n_) + (level - 1);
  }

 private:
  int n_;
  std::vector<BasisLabel> labels_;
};

/// Dense real symmetric Hamiltonian in the input basis (peV).
struct HamiltonianMatrix {
  Eigen::MatrixXd entries;

  int dim() const { return static_cast<int>(entries.rows()); }
  double max_abs() const { return entries.cwiseAbs().maxCoeff(); }
};

/// Uniform grid band_center + (k - (N + 1) / 2) * d_eps, k = 1..N, or N
/// copies of band_center in degenerate-continuum mode.
std::vector<double> continuum_energies(const ModelParams &p);

HamiltonianMatrix build_hamiltonian(const ModelParams &p, const BasisMap &b);

}  // namespace qtel

#endif  // QTEL_MODEL_HPP
