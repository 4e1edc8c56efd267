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
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace multinet::cli {

// Thrown for config files that name unknown keys or are malformed.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat `key=value` lines; blank lines and `#` comments ignored.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Value of `--name X` / `--name=X` in args, or empty.
std::string find_flag_value(const std::vector<std::string>& args, const std::string& name);
bool has_flag(const std::vector<std::string>& args, const std::string& name);

// Appends `--key=value` for config entries not already given on the command
// line, so explicit flags take precedence over the file.
std::vector<std::string> merge_config(std::vector<std::string> args,
                                      const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace multinet::cli
