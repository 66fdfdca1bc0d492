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

#include "pdcbench/config.hpp"

#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace pdcbench {

namespace {

std::string field_name(std::string_view section, std::string_view key) {
  return section.empty() ? std::string(key) : std::string(section) + "." + std::string(key);
}

}  // namespace

Config Config::parse(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()), e.message());
  }
  Config cfg;
  for (const auto& [name, node] : tree) {
    // ptree cannot tell "[name]" with no keys from "name =" above every
    // section; only the second carries data.
    if (node.empty() && !node.data().empty()) throw ConfigError(name, "key outside any [section]");
    auto& sec = cfg.sections_[name];
    for (const auto& [key, value] : node) sec[key] = value.data();
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool Config::has(std::string_view section, std::string_view key) const { return find(section, key).has_value(); }

std::optional<std::string> Config::find(std::string_view section, std::string_view key) const {
  auto s = sections_.find(std::string(section));
  if (s == sections_.end()) return std::nullopt;
  auto k = s->second.find(std::string(key));
  if (k == s->second.end()) return std::nullopt;
  return k->second;
}

std::string Config::get(std::string_view section, std::string_view key) const {
  auto v = find(section, key);
  if (!v) throw ConfigError(field_name(section, key), "missing required value");
  return *v;
}

std::string Config::get_or(std::string_view section, std::string_view key, std::string fallback) const {
  auto v = find(section, key);
  return v ? *v : std::move(fallback);
}

std::int64_t Config::get_int(std::string_view section, std::string_view key) const {
  auto text = get(section, key);
  try {
    std::size_t used = 0;
    auto v = std::stoll(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field_name(section, key), "expected an integer, got '" + text + "'");
  }
}

std::int64_t Config::get_int_or(std::string_view section, std::string_view key, std::int64_t fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

double Config::get_double_or(std::string_view section, std::string_view key, double fallback) const {
  auto v = find(section, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    double d = std::stod(*v, &used);
    if (used != v->size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw ConfigError(field_name(section, key), "expected a number, got '" + *v + "'");
  }
}

void Config::set(std::string_view section, std::string_view key, std::string value) {
  sections_[std::string(section)][std::string(key)] = std::move(value);
}

std::string Config::to_string() const {
  std::ostringstream out;
  if (auto top = sections_.find(""); top != sections_.end()) {
    for (const auto& [k, v] : top->second) out << k << " = " << v << "\n";
  }
  for (const auto& [name, kv] : sections_) {
    if (name.empty()) continue;
    out << "[" << name << "]\n";
    for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
  }
  return out.str();
}

}  // namespace pdcbench
