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

// CSV emission: '#'-prefixed metadata lines, a header row, data rows, '#' footer lines.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace bench {

struct Table {
  std::vector<std::string> meta;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;  // wall times and other run-dependent notes
};

/// 17 significant digits, round-trip safe.
std::string num(double x);

/// Header lines shared by every command: engine version, unit system, merged config and its hash.
std::vector<std::string> metadata(const std::string& command, const nlohmann::json& config);

class OutputError : public std::runtime_error {
 public:
  explicit OutputError(const std::string& what) : std::runtime_error(what) {}
};

/// "" or "-" writes to stdout.
void write_table(const Table& table, const std::string& path);

/// path with "_<index>" inserted before the extension.
std::string indexed_path(const std::string& path, std::size_t index);

}  // namespace bench
