// Copyright 2026 The catrep Authors
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

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catrep::cli {

/// Bad configuration key or value; the message names the key.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& key, const std::string& what)
        : std::runtime_error(key.empty() ? what : "config key '" + key + "': " + what),
          key_(key) {}
    const std::string& key() const noexcept { return key_; }

  private:
    std::string key_;
};

enum class Kind { Int, UInt64, Double, Bool, Choice, DoubleList, IntList, Path };

struct KeySpec {
    std::string name;
    std::string default_value;
    Kind kind;
    double min = 0.0;
    double max = 0.0;
    std::string doc;
    std::vector<std::string> choices = {};  // Kind::Choice only
};

/// Every accepted key with its default, range and unit.
const std::vector<KeySpec>& key_specs();

/// Flat key = value configuration. Lines starting with '#' are comments.
/// Values are range-checked and normalised when set, so serialise -> parse
/// is the identity.
class Config {
  public:
    Config();  // all defaults

    static Config parse(std::string_view text);
    static Config load(const std::string& path);
    std::string serialize() const;

    void set(const std::string& key, std::string_view value);
    const std::string& raw(const std::string& key) const;

    int get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    double get_double(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::vector<double> get_doubles(const std::string& key) const;
    std::vector<int> get_ints(const std::string& key) const;

    bool operator==(const Config& other) const = default;

  private:
    std::map<std::string, std::string> values_;
};

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

} // namespace catrep::cli
