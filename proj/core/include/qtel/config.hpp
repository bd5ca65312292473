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

#ifndef QTEL_CONFIG_HPP
#define QTEL_CONFIG_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "qtel/model.hpp"

namespace qtel {

struct RunConfig {
  ModelParams params;
  double t_max = 8000.0;  // s
  int t_steps = 4000;
};

/// Accepted keys, in canonical order:
/// E_g, E_w, V, dV, W, d_eps, N, band_center, hbar, t_max, t_steps.
std::span<const std::string_view> config_keys();

/// Assigns one key. Throws ConfigError naming the key when it is unknown or
/// the value does not parse.
void set_config_value(RunConfig &cfg, std::string_view key, std::string_view value);

/// Parses `key = value` lines. '#' starts a comment, whitespace is ignored,
/// keys may appear at most once and missing keys keep their defaults. The
/// result is validated; every failure is a ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path &path);

/// Throws ConfigError when the parameters or the time grid are invalid.
void validate_config(const RunConfig &cfg);

/// Canonical `key = value` rendering that parse_config reads back exactly.
std::string format_config(const RunConfig &cfg);

}  // namespace qtel

#endif  // QTEL_CONFIG_HPP
