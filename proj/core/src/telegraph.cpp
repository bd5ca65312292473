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

#include "qtel/telegraph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qtel {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::SlowRabi:
      return "SlowRabi";
    case Regime::FasterRabi:
      return "FasterRabi";
    case Regime::Telegraph:
      return "Telegraph";
    case Regime::Bonding:
      return "Bonding";
  }
  return "Bonding";
}

Regime classify_regime(double V, double dV) {
  if (!(V > 0) || !(dV >= 0) || dV > V)
    throw std::invalid_argument("classify_regime: need V > 0 and 0 <= dV <= V");
  if (6 * dV >= 5 * V) return Regime::SlowRabi;
  if (2 * dV >= V) return Regime::FasterRabi;
  if (6 * dV >= V) return Regime::Telegraph;
  return Regime::Bonding;
}

std::string_view to_string(Direction d) {
  return d == Direction::AlphaToBeta ? "alpha_to_beta" : "beta_to_alpha";
}

SwitchEvents detect_switches(std::span<const double> times,
                             std::span<const double> occ_alpha, double hi, double lo) {
  if (times.size() != occ_alpha.size())
    throw std::invalid_argument("detect_switches: times and values differ in length");
  if (times.size() < 2) throw std::invalid_argument("detect_switches: need at least 2 samples");
  if (!(0 < lo && lo < hi && hi < 1))
    throw std::invalid_argument("detect_switches: need 0 < lo < hi < 1");

  SwitchEvents ev;
  ev.hi = hi;
  ev.lo = lo;
  enum class State { Unknown, Alpha, Beta } state = State::Unknown;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double x = occ_alpha[i];
    switch (state) {
      case State::Unknown:
        if (x > hi) state = State::Alpha;
        else if (x < lo) state = State::Beta;
        break;
      case State::Alpha:
        if (x < lo) {
          state = State::Beta;
          ev.events.push_back({times[i], Direction::AlphaToBeta});
        }
        break;
      case State::Beta:
        if (x > hi) {
          state = State::Alpha;
          ev.events.push_back({times[i], Direction::BetaToAlpha});
        }
        break;
    }
  }
  for (std::size_t i = 1; i < ev.events.size(); ++i)
    ev.dwells.push_back(ev.events[i].time - ev.events[i - 1].time);
  return ev;
}

SwitchEvents detect_switches(const TimeSeries &ts, double hi, double lo) {
  return detect_switches(ts.times, ts.occ_alpha, hi, lo);
}

DwellStatistics dwell_statistics(const SwitchEvents &ev) {
  if (ev.dwells.empty()) throw std::invalid_argument("dwell_statistics: no dwells");
  DwellStatistics s;
  s.count = ev.dwells.size();
  s.mean = std::accumulate(ev.dwells.begin(), ev.dwells.end(), 0.0) / s.count;
  double var = 0;
  for (double d : ev.dwells) var += (d - s.mean) * (d - s.mean);
  s.stddev = std::sqrt(var / s.count);
  return s;
}

double square_wave_partial_sum(double x, int n_terms) {
  if (n_terms < 1) throw std::invalid_argument("square_wave_partial_sum: n_terms >= 1");
  double s = 0;
  for (int k = 1; k <= n_terms; ++k) {
    const double m = 2.0 * k - 1;
    s += std::sin(m * x) / m;
  }
  return s;
}

std::vector<JumpEvent> detect_jumps(std::span<const double> times,
                                    std::span<const double> values, int window,
                                    double min_step) {
  if (times.size() != values.size())
    throw std::invalid_argument("detect_jumps: times and values differ in length");
  if (window < 1) throw std::invalid_argument("detect_jumps: window must be positive");
  const std::size_t n = values.size();
  const std::size_t w = static_cast<std::size_t>(window);
  if (n < 2 * w) return {};

  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + values[i];

  struct Candidate {
    std::size_t at;
    double step;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = w; i + w <= n; ++i) {
    const double after = (prefix[i + w] - prefix[i]) / window;
    const double before = (prefix[i] - prefix[i - w]) / window;
    const double step = after - before;
    if (std::abs(step) >= min_step) cands.push_back({i, step});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate &a, const Candidate &b) {
    return std::abs(a.step) > std::abs(b.step);
  });

  std::vector<Candidate> picked;
  for (const auto &c : cands) {
    const bool clear = std::all_of(picked.begin(), picked.end(), [&](const Candidate &p) {
      const std::size_t gap = p.at > c.at ? p.at - c.at : c.at - p.at;
      return gap > 2 * w;
    });
    if (clear) picked.push_back(c);
  }
  std::sort(picked.begin(), picked.end(),
            [](const Candidate &a, const Candidate &b) { return a.at < b.at; });

  std::vector<JumpEvent> out;
  out.reserve(picked.size());
  for (const auto &c : picked) out.push_back({times[c.at], c.step});
  return out;
}

double dominant_period(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 4)
    throw std::invalid_argument("dominant_period: need at least 4 matching samples");
  const std::size_t n = values.size();
  const double dt = times[1] - times[0];
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;

  double best = -1;
  std::size_t best_k = 1;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    double re = 0, im = 0;
    const double w = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double x = values[i] - mean;
      re += x * std::cos(w * i);
      im -= x * std::sin(w * i);
    }
    const double power = re * re + im * im;
    if (power > best) {
      best = power;
      best_k = k;
    }
  }
  return static_cast<double>(n) * dt / static_cast<double>(best_k);
}

}  // namespace qtel
