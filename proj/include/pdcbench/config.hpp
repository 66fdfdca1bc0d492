// Copyright 2026 The pdcbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pdcbench {

/// Raised for malformed or missing configuration values. `field` names the
/// offending "section.key".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Flat "key = value" text grouped under "[section]" headers. A key before
/// the first header is an error. Lines starting with '#' or ';' are comments.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::string& path);

  bool has(std::string_view section, std::string_view key) const;
  std::optional<std::string> find(std::string_view section, std::string_view key) const;
  std::string get(std::string_view section, std::string_view key) const;
  std::string get_or(std::string_view section, std::string_view key, std::string fallback) const;
  std::int64_t get_int(std::string_view section, std::string_view key) const;
  std::int64_t get_int_or(std::string_view section, std::string_view key, std::int64_t fallback) const;
  double get_double_or(std::string_view section, std::string_view key, double fallback) const;

  void set(std::string_view section, std::string_view key, std::string value);

  /// Canonical rendering: sections and keys in sorted order.
  std::string to_string() const;

  const std::map<std::string, std::map<std::string, std::string>>& sections() const noexcept { return sections_; }

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace pdcbench
