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

#ifndef QTEL_TELEGRAPH_HPP
#define QTEL_TELEGRAPH_HPP

#include <span>
#include <string_view>
#include <vector>

#include "qtel/dynamics.hpp"

namespace qtel {

enum class Regime { SlowRabi, FasterRabi, Telegraph, Bonding };

std::string_view to_string(Regime r);

/// Interval membership of dV in [0, V]:
///   SlowRabi   [5V/6, V]
///   FasterRabi [V/2, 5V/6)
///   Telegraph  [V/6, V/2)
///   Bonding    [0, V/6)
/// A boundary value belongs to the regime with the larger dV. Throws
/// std::invalid_argument unless V > 0 and 0 <= dV <= V.
Regime classify_regime(double V, double dV);

enum class Direction { AlphaToBeta, BetaToAlpha };

std::string_view to_string(Direction d);

struct SwitchEvent {
  double time = 0;  // first sample past the far threshold
  Direction direction = Direction::AlphaToBeta;
};

struct SwitchEvents {
  std::vector<SwitchEvent> events;
  std::vector<double> dwells;  // times between consecutive events
  double hi = 0.7;
  double lo = 0.3;
};

/// Hysteresis detector on occ_alpha. The starting side is fixed by the
/// first sample above hi (alpha) or below lo (beta); afterwards an
/// alpha->beta switch needs a sample below lo and beta->alpha one above hi.
/// Throws std::invalid_argument unless 0 < lo < hi < 1 and there are at
/// least two samples.
SwitchEvents detect_switches(std::span<const double> times,
                             std::span<const double> occ_alpha, double hi = 0.7,
                             double lo = 0.3);
SwitchEvents detect_switches(const TimeSeries &ts, double hi = 0.7, double lo = 0.3);

struct DwellStatistics {
  double mean = 0;
  double stddev = 0;  // population
  std::size_t count = 0;
};

/// Throws std::invalid_argument when there are no dwells.
DwellStatistics dwell_statistics(const SwitchEvents &ev);

/// sum_{k=1..n_terms} sin((2k - 1) x) / (2k - 1).
double square_wave_partial_sum(double x, int n_terms);

struct JumpEvent {
  double time = 0;
  double step = 0;  // mean after minus mean before
};

/// Step detector for plateau jumps that stay inside the hysteresis band.
/// For every sample i the mean of the `window` samples from i on is
/// compared with the mean of the `window` samples before i; local maxima of
/// |difference| >= min_step more than 2 * `window` samples apart are
/// reported in time order.
std::vector<JumpEvent> detect_jumps(std::span<const double> times,
                                    std::span<const double> values, int window = 25,
                                    double min_step = 0.02);

/// Period (same unit as times) of the largest periodogram peak of the
/// mean-removed samples over the frequencies k / T, k = 1..n/2, with T the
/// record length n * dt.
double dominant_period(std::span<const double> times, std::span<const double> values);

}  // namespace qtel

#endif  // QTEL_TELEGRAPH_HPP
