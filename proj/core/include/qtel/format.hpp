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

#ifndef QTEL_FORMAT_HPP
#define QTEL_FORMAT_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qtel {

/// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_double(double v);

/// Ordered `key = value` text report.
class KeyValueReport {
 public:
  void add(std::string key, std::string value);
  void add(std::string key, double value);
  void add(std::string key, long long value);
  void add(std::string key, int value) { add(std::move(key), static_cast<long long>(value)); }
  void add(std::string key, std::size_t value) {
    add(std::move(key), static_cast<long long>(value));
  }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  void add(std::string key, const char *value) { add(std::move(key), std::string(value)); }
  void add(std::string key, std::string_view value) { add(std::move(key), std::string(value)); }

  std::string str() const;
  const std::vector<std::pair<std::string, std::string>> &items() const { return items_; }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

/// Writes bytes verbatim; throws std::runtime_error on failure.
void write_file(const std::filesystem::path &path, std::string_view content);

std::string read_file(const std::filesystem::path &path);

}  // namespace qtel

#endif  // QTEL_FORMAT_HPP
