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


#include "bench/config.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/property_tree/ini_parser.hpp>

namespace bench {

namespace pt = boost::property_tree;

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return errno == 0 && end == s.c_str() + s.size();
}

}  // namespace

Config Config::load(const std::string& path) {
  Config c;
  if (path.empty()) {
    return c;
  }
  c.path_ = path;
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path + ": cannot open config file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    std::istringstream parse(text);
    pt::read_ini(parse, c.tree_);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(path + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  // Boost keeps no positions, so map fields to lines with a second pass.
  std::istringstream lines(text);
  std::string line;
  std::string section;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    boost::algorithm::trim(line);
    if (line.empty() || line[0] == ';' || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = boost::algorithm::trim_copy(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      c.lines_[section + "." + boost::algorithm::trim_copy(line.substr(0, eq))] = number;
    }
  }
  return c;
}

void Config::set(const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq || dot == 0 || dot + 1 == eq) {
    throw ConfigError("--set " + assignment + ": expected section.key=value");
  }
  const std::string section = boost::algorithm::trim_copy(assignment.substr(0, dot));
  const std::string key = boost::algorithm::trim_copy(assignment.substr(dot + 1, eq - dot - 1));
  const std::string value = boost::algorithm::trim_copy(assignment.substr(eq + 1));
  if (key.find('.') != std::string::npos) {
    throw ConfigError("--set " + assignment + ": key may not contain '.'");
  }
  auto child = tree_.get_child_optional(section);
  if (!child) {
    tree_.add_child(section, pt::ptree());
    child = tree_.get_child_optional(section);
  }
  child->put(pt::ptree::path_type(key, '\0'), value);
  overridden_[section + "." + key] = true;
}

void Config::check_schema(const std::map<std::string, std::vector<std::string>>& schema) const {
  for (const auto& [section, body] : tree_) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError(where("", section) + ": key outside any section");
    }
    const auto it = schema.find(section);
    if (it == schema.end()) {
      throw ConfigError((path_.empty() ? std::string("config") : path_) + ": unknown section [" + section + "]");
    }
    for (const auto& kv : body) {
      if (std::find(it->second.begin(), it->second.end(), kv.first) == it->second.end()) {
        throw ConfigError(where(section, kv.first) + ": unknown key");
      }
    }
  }
}

std::string Config::where(const std::string& section, const std::string& key) const {
  const std::string id = section + "." + key;
  if (overridden_.count(id)) {
    return "--set " + id;
  }
  const auto it = lines_.find(id);
  const std::string file = path_.empty() ? std::string("config") : path_;
  if (it != lines_.end()) {
    return file + ":" + std::to_string(it->second) + ": [" + section + "] " + key;
  }
  return file + ": [" + section + "] " + key;
}

void Config::bad(const std::string& section, const std::string& key, const std::string& msg) const {
  throw ConfigError(where(section, key) + ": " + msg);
}

std::optional<std::string> Config::raw(const std::string& section, const std::string& key) const {
  const auto child = tree_.get_child_optional(section);
  if (!child) return std::nullopt;
  const auto v = child->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
  if (!v) return std::nullopt;
  return boost::algorithm::trim_copy(*v);
}

bool Config::has(const std::string& section, const std::string& key) const { return raw(section, key).has_value(); }

std::optional<double> Config::maybe_number(const std::string& section, const std::string& key) const {
  const auto v = raw(section, key);
  if (!v) return std::nullopt;
  double out = 0.0;
  if (!parse_double(*v, out) || !std::isfinite(out)) {
    bad(section, key, "expected a finite number, got '" + *v + "'");
  }
  echo(section, key, out);
  return out;
}

double Config::number(const std::string& section, const std::string& key, double fallback) const {
  const auto v = maybe_number(section, key);
  if (!v) {
    echo(section, key, fallback);
    return fallback;
  }
  return *v;
}

int Config::integer(const std::string& section, const std::string& key, int fallback) const {
  const auto v = raw(section, key);
  if (!v) {
    echo(section, key, fallback);
    return fallback;
  }
  errno = 0;
  char* end = nullptr;
  const long out = std::strtol(v->c_str(), &end, 10);
  if (v->empty() || errno != 0 || end != v->c_str() + v->size() || out < -2147483647L || out > 2147483647L) {
    bad(section, key, "expected an integer, got '" + *v + "'");
  }
  echo(section, key, out);
  return static_cast<int>(out);
}

std::uint64_t Config::unsigned64(const std::string& section, const std::string& key, std::uint64_t fallback) const {
  const auto v = raw(section, key);
  if (!v) {
    echo(section, key, fallback);
    return fallback;
  }
  errno = 0;
  char* end = nullptr;
  const unsigned long long out = std::strtoull(v->c_str(), &end, 10);
  if (v->empty() || (*v)[0] == '-' || errno != 0 || end != v->c_str() + v->size()) {
    bad(section, key, "expected an unsigned 64-bit integer, got '" + *v + "'");
  }
  echo(section, key, static_cast<std::uint64_t>(out));
  return out;
}

bool Config::flag(const std::string& section, const std::string& key, bool fallback) const {
  const auto v = raw(section, key);
  if (!v) {
    echo(section, key, fallback);
    return fallback;
  }
  const std::string s = lower(*v);
  bool out = false;
  if (s == "1" || s == "true" || s == "yes" || s == "on") {
    out = true;
  } else if (s == "0" || s == "false" || s == "no" || s == "off") {
    out = false;
  } else {
    bad(section, key, "expected true/false, got '" + *v + "'");
  }
  echo(section, key, out);
  return out;
}

std::string Config::text(const std::string& section, const std::string& key, const std::string& fallback) const {
  const auto v = raw(section, key);
  const std::string out = v ? *v : fallback;
  echo(section, key, out);
  return out;
}

std::optional<std::vector<double>> Config::numbers(const std::string& section, const std::string& key) const {
  const auto v = raw(section, key);
  if (!v) return std::nullopt;
  std::string s = *v;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    double x = 0.0;
    if (!parse_double(token, x) || !std::isfinite(x)) {
      bad(section, key, "expected a list of numbers, bad entry '" + token + "'");
    }
    out.push_back(x);
  }
  echo(section, key, out);
  return out;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace bench
