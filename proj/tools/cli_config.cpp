/**
 * Copyright 2026 The multinet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "cli_config.hpp"

#include <fstream>

namespace multinet::cli {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    for (const auto& seen : entries)
      if (seen.first == key) throw ConfigError(path + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    entries.emplace_back(key, value);
  }
  return entries;
}

std::string find_flag_value(const std::vector<std::string>& args, const std::string& name) {
  const std::string eq = name + "=";
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == name && k + 1 < args.size()) return args[k + 1];
    if (args[k].rfind(eq, 0) == 0) return args[k].substr(eq.size());
  }
  return {};
}

bool has_flag(const std::vector<std::string>& args, const std::string& name) {
  const std::string eq = name + "=";
  for (const auto& a : args)
    if (a == name || a.rfind(eq, 0) == 0) return true;
  return false;
}

std::vector<std::string> merge_config(std::vector<std::string> args,
                                      const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [key, value] : entries) {
    const std::string flag = "--" + key;
    if (has_flag(args, flag)) continue;
    args.push_back(flag + "=" + value);
  }
  return args;
}

}  // namespace multinet::cli
