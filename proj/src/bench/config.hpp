// Copyright 2026 The qndlz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

// INI configuration for the bench front end. Values come from the file, then from
// --set section.key=value overrides. Every value read is echoed into the output header.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <json.hpp>

namespace bench {

/// Bad input: reported with file, line and field where known. Exit code 1.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class Config {
 public:
  /// Empty path: all defaults.
  static Config load(const std::string& path);

  /// "section.key=value"
  void set(const std::string& assignment);

  /// Rejects unknown sections and keys.
  void check_schema(const std::map<std::string, std::vector<std::string>>& schema) const;

  bool has(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key, double fallback) const;
  std::optional<double> maybe_number(const std::string& section, const std::string& key) const;
  int integer(const std::string& section, const std::string& key, int fallback) const;
  std::uint64_t unsigned64(const std::string& section, const std::string& key, std::uint64_t fallback) const;
  bool flag(const std::string& section, const std::string& key, bool fallback) const;
  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
  /// Comma or whitespace separated numbers. Present but empty gives an empty vector.
  std::optional<std::vector<double>> numbers(const std::string& section, const std::string& key) const;

  /// Where a field came from, for messages: "run.ini:12: [meter] kappa" or "--set meter.kappa".
  std::string where(const std::string& section, const std::string& key) const;

  /// Values read so far, by section.
  const nlohmann::json& effective() const { return echo_; }
  void echo(const std::string& section, const std::string& key, const nlohmann::json& value) const {
    echo_[section][key] = value;
  }

 private:
  std::optional<std::string> raw(const std::string& section, const std::string& key) const;
  [[noreturn]] void bad(const std::string& section, const std::string& key, const std::string& msg) const;

  boost::property_tree::ptree tree_;
  std::string path_;
  std::map<std::string, int> lines_;       // "section.key" -> line in the file
  std::map<std::string, bool> overridden_;  // "section.key" set from the command line
  mutable nlohmann::json echo_ = nlohmann::json::object();
};

/// FNV-1a 64-bit.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace bench
