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

#ifndef QTEL_ERROR_HPP
#define QTEL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qtel {

/// Invalid or unreadable run configuration (parameters, config file, flags).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

/// A numerical stage failed: non-convergence, failed residual checks,
/// insufficient data for a fit or regression.
class ComputationError : public std::runtime_error {
 public:
  explicit ComputationError(const std::string &what)
      : std::runtime_error(what) {}
};

}  // namespace qtel

#endif  // QTEL_ERROR_HPP
