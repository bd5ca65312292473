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

#include "qtel/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <set>

#include "qtel/error.hpp"
#include "qtel/format.hpp"

namespace qtel {

namespace {

constexpr std::array<std::string_view, 11> kKeys = {
    "E_g", "E_w", "V", "dV", "W", "d_eps", "N", "band_center", "hbar", "t_max", "t_steps"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw ConfigError("config key '" + std::string(key) + "': cannot parse '" +
                      std::string(v) + "' as a number");
  return out;
}

int parse_int(std::string_view key, std::string_view v) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty())
    throw ConfigError("config key '" + std::string(key) + "': cannot parse '" +
                      std::string(v) + "' as an integer");
  return out;
}

}  // namespace

std::span<const std::string_view> config_keys() { return kKeys; }

void set_config_value(RunConfig &cfg, std::string_view key, std::string_view value) {
  auto &p = cfg.params;
  if (key == "E_g") p.E_g = parse_real(key, value);
  else if (key == "E_w") p.E_w = parse_real(key, value);
  else if (key == "V") p.V = parse_real(key, value);
  else if (key == "dV") p.dV = parse_real(key, value);
  else if (key == "W") p.W = parse_real(key, value);
  else if (key == "d_eps") p.d_eps = parse_real(key, value);
  else if (key == "N") p.N = parse_int(key, value);
  else if (key == "band_center") p.band_center = parse_real(key, value);
  else if (key == "hbar") p.hbar = parse_real(key, value);
  else if (key == "t_max") cfg.t_max = parse_real(key, value);
  else if (key == "t_steps") cfg.t_steps = parse_int(key, value);
  else throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void validate_config(const RunConfig &cfg) {
  require_valid(cfg.params);
  if (!std::isfinite(cfg.t_max) || !(cfg.t_max > 0))
    throw ConfigError("config key 't_max': must be positive");
  if (cfg.t_steps < 2) throw ConfigError("config key 't_steps': must be at least 2");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(line_no) + ": missing key");
    if (seen.contains(key))
      throw ConfigError("config key '" + std::string(key) + "' given more than once");
    set_config_value(cfg, key, value);
    seen.emplace(key);
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path &path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception &e) {
    throw ConfigError(e.what());
  }
  return parse_config(text);
}

std::string format_config(const RunConfig &cfg) {
  const auto &p = cfg.params;
  KeyValueReport r;
  r.add("E_g", p.E_g);
  r.add("E_w", p.E_w);
  r.add("V", p.V);
  r.add("dV", p.dV);
  r.add("W", p.W);
  r.add("d_eps", p.d_eps);
  r.add("N", p.N);
  r.add("band_center", p.band_center);
  r.add("hbar", p.hbar);
  r.add("t_max", cfg.t_max);
  r.add("t_steps", cfg.t_steps);
  return r.str();
}

}  // namespace qtel
