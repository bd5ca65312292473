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

#ifndef QTEL_TOOLS_CLI_HPP
#define QTEL_TOOLS_CLI_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qtel/config.hpp"
#include "qtel/dynamics.hpp"
#include "qtel/spectral.hpp"
#include "qtel/telegraph.hpp"

namespace qtel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitConfig = 2;

struct AnalysisOptions {
  bool include_environment = true;
  double hi = 0.7;
  double lo = 0.3;
  int jump_window = 25;
  double jump_min_step = 0.02;
};

/// Everything the simulate and sweep commands report for one parameter set.
struct PointAnalysis {
  RunConfig config;
  Regime regime = Regime::Telegraph;
  EigenSystem eigen;  // input basis, from the exact symmetry blocks
  TimeSeries series;
  SwitchEvents switches;
  std::vector<JumpEvent> jumps;
  std::optional<DwellStatistics> dwell;
  SpectralDistribution spectrum;
  std::optional<LorentzianFit> minus_fit;
  std::string fit_error;
};

/// Diagonalizes the symmetry blocks of H, evolves g_alpha on the config's
/// time grid and runs the detectors and the minus-branch fit.
PointAnalysis analyze_point(const RunConfig &cfg, const AnalysisOptions &opt = {});

/// Eigen system of H assembled from the separately diagonalized H+ and H-.
EigenSystem block_eigensystem(const ModelParams &p);

std::string summary_header();
std::string summary_row(const PointAnalysis &a);

std::string timeseries_csv(const TimeSeries &ts);
std::string events_csv(const SwitchEvents &ev);
std::string spectrum_csv(const SpectralDistribution &sd);

/// Entry point shared by the executable and the tests. Returns the process
/// exit code: 0 success, 1 computation error, 2 configuration error.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qtel::cli

#endif  // QTEL_TOOLS_CLI_HPP
