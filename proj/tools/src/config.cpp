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

#include "catrep_cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace catrep::cli {

namespace {

constexpr double kBig = 1e12;

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const auto next = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, next == std::string_view::npos ? next : next - pos)));
        if (next == std::string_view::npos) {
            return out;
        }
        pos = next + 1;
    }
}

const KeySpec& spec(const std::string& key) {
    const auto& all = key_specs();
    const auto it = std::find_if(all.begin(), all.end(), [&](const KeySpec& k) { return k.name == key; });
    if (it == all.end()) {
        throw ConfigError(key, "unknown key");
    }
    return *it;
}

double parse_number(const KeySpec& k, std::string_view text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto r = std::from_chars(text.data(), end, v);
    if (text.empty() || r.ec != std::errc() || r.ptr != end || !std::isfinite(v)) {
        throw ConfigError(k.name, "expected a number, got '" + std::string(text) + "'");
    }
    if (v < k.min || v > k.max) {
        throw ConfigError(k.name, "value " + std::string(text) + " outside [" +
                                      format_double(k.min) + ", " + format_double(k.max) + "]");
    }
    return v;
}

std::string normalise_scalar(const KeySpec& k, Kind kind, std::string_view text) {
    switch (kind) {
    case Kind::Int:
    case Kind::IntList: {
        long long v = 0;
        const auto* end = text.data() + text.size();
        const auto r = std::from_chars(text.data(), end, v);
        if (text.empty() || r.ec != std::errc() || r.ptr != end) {
            throw ConfigError(k.name, "expected an integer, got '" + std::string(text) + "'");
        }
        if (static_cast<double>(v) < k.min || static_cast<double>(v) > k.max) {
            throw ConfigError(k.name, "value " + std::to_string(v) + " outside [" +
                                          format_double(k.min) + ", " + format_double(k.max) + "]");
        }
        return std::to_string(v);
    }
    case Kind::UInt64: {
        std::uint64_t v = 0;
        const auto* end = text.data() + text.size();
        const auto r = std::from_chars(text.data(), end, v);
        if (text.empty() || r.ec != std::errc() || r.ptr != end) {
            throw ConfigError(k.name, "expected an unsigned integer, got '" + std::string(text) + "'");
        }
        return std::to_string(v);
    }
    case Kind::Double:
    case Kind::DoubleList:
        return format_double(parse_number(k, text));
    case Kind::Bool:
        if (text == "true" || text == "1" || text == "yes" || text == "on") {
            return "true";
        }
        if (text == "false" || text == "0" || text == "no" || text == "off") {
            return "false";
        }
        throw ConfigError(k.name, "expected true or false, got '" + std::string(text) + "'");
    case Kind::Choice:
        if (std::find(k.choices.begin(), k.choices.end(), text) == k.choices.end()) {
            std::string opts;
            for (const auto& c : k.choices) {
                opts += (opts.empty() ? "" : ", ") + c;
            }
            throw ConfigError(k.name, "expected one of {" + opts + "}, got '" + std::string(text) + "'");
        }
        return std::string(text);
    case Kind::Path:
        return std::string(text);
    }
    return std::string(text);
}

std::string normalise(const KeySpec& k, std::string_view text) {
    text = trim(text);
    if (k.kind != Kind::DoubleList && k.kind != Kind::IntList) {
        return normalise_scalar(k, k.kind, text);
    }
    if (text.empty()) {
        throw ConfigError(k.name, "empty list");
    }
    std::string out;
    for (auto item : split(text, ',')) {
        out += (out.empty() ? "" : ",") + normalise_scalar(k, k.kind, item);
    }
    return out;
}

} // namespace

std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), r.ptr);
}

const std::vector<KeySpec>& key_specs() {
    static const std::vector<KeySpec> specs = {
        {"seed", "1", Kind::UInt64, 0, 0, "master seed"},
        {"workers", "1", Kind::Int, 1, 256, "worker threads"},
        {"out", "", Kind::Path, 0, 0, "output path, empty for stdout"},
        {"trials", "10000", Kind::Int, 2, 1e8, "final states per breeding run (fig2 rows, breed)"},

        {"breed.m", "3", Kind::Int, 0, 4, "breeding rounds"},
        {"breed.delta", "0.6", Kind::Double, 0, 10, "acceptance window Delta"},
        {"breed.contamination", "0.01", Kind::Double, 0, 0.999, "probability of |2> inputs"},
        {"breed.rate_model", "throughput", Kind::Choice, 0, 0, "rate accounting", {"throughput", "latency"}},
        {"breed.memory", "true", Kind::Bool, 0, 0, "quantum memories between rounds"},
        {"breed.replicates", "16", Kind::Int, 1, 4096, "independent populations"},
        {"breed.sampler_step", "0.001", Kind::Double, 1e-6, 0.5, "homodyne sampling grid step"},

        {"fig2.m", "1,2,3", Kind::IntList, 0, 4, "breeding rounds swept"},
        {"fig2.contamination", "0,0.01", Kind::DoubleList, 0, 0.999, "contaminations swept"},
        {"fig2.delta", "0.05,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,1", Kind::DoubleList, 0, 10,
         "windows swept"},

        {"swap.alpha", "2.5", Kind::Double, 0.1, 10, "cat amplitude"},
        {"swap.k", "0", Kind::Int, 0, 4, "auxiliary cats"},
        {"swap.delta", "0", Kind::Double, 0, 20, "simple-swap X window, 0 for the default cut"},

        {"source.eta_d", "0.5", Kind::Double, 1e-6, 1, "detector efficiency"},
        {"source.Latt_km", "20", Kind::Double, 1e-3, kBig, "attenuation length (km)"},
        {"source.c_kms", "200000", Kind::Double, 1, kBig, "signal speed in fiber (km/s)"},
        {"source.detection", "threshold", Kind::Choice, 0, 0, "heralding detectors",
         {"threshold", "number_resolving"}},

        {"repeater.trials", "200", Kind::Int, 2, 1e8, "delivered pairs per simulation"},
        {"repeater.replicates", "8", Kind::Int, 1, 4096, "independent populations"},
        {"repeater.sampler_step", "0.01", Kind::Double, 1e-6, 0.5, "homodyne sampling grid step"},
        {"repeater.event_samples", "2000", Kind::Int, 0, 1e8, "event-level timing samples"},

        {"fig3.L_km", "100,200,300,400,500,600,700,800,900,1000", Kind::DoubleList, 1e-3, kBig,
         "distances (km)"},
        {"fig3.F_target", "0.9", Kind::Double, 0.01, 1, "fidelity target"},
        {"fig3.budget", "200", Kind::Int, 1, 1e6, "simulations per (n, m) cell"},
        {"fig3.n", "0,1,2,3,4,5", Kind::IntList, 0, 12, "nesting levels searched"},
        {"fig3.m", "1,2,3", Kind::IntList, 0, 4, "breeding rounds searched"},
        {"fig3.p_start", "0.003", Kind::Double, 1e-9, 0.5, "initial pair-production probability"},
        {"fig3.p_min", "1e-05", Kind::Double, 1e-9, 0.5, "lower bound of p"},
        {"fig3.p_max", "0.05", Kind::Double, 1e-9, 0.5, "upper bound of p"},
        {"fig3.delta_gen_start", "0.3", Kind::Double, 1e-4, 10, "initial breeding window"},
        {"fig3.delta_swap_start", "0.3", Kind::Double, 1e-4, 20, "initial swap window"},
    };
    return specs;
}

Config::Config() {
    for (const auto& k : key_specs()) {
        values_[k.name] = k.default_value.empty() ? "" : normalise(k, k.default_value);
    }
}

Config Config::parse(std::string_view text) {
    Config c;
    std::map<std::string, int> seen;
    int line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        if (seen.count(key) != 0) {
            throw ConfigError(key, "duplicate key (line " + std::to_string(line_no) + ")");
        }
        seen[key] = line_no;
        c.set(key, line.substr(eq + 1));
    }
    return c;
}

Config Config::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot read config file " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string Config::serialize() const {
    std::string out;
    for (const auto& k : key_specs()) {
        out += "# " + k.doc + "\n" + k.name + " = " + values_.at(k.name) + "\n";
    }
    return out;
}

void Config::set(const std::string& key, std::string_view value) {
    const KeySpec& k = spec(key);
    const auto v = trim(value);
    if (v.empty() && k.kind == Kind::Path) {
        values_[key].clear();
        return;
    }
    values_[key] = normalise(k, v);
}

const std::string& Config::raw(const std::string& key) const {
    spec(key);
    return values_.at(key);
}

int Config::get_int(const std::string& key) const {
    return std::stoi(raw(key));
}

std::uint64_t Config::get_u64(const std::string& key) const {
    return std::stoull(raw(key));
}

double Config::get_double(const std::string& key) const {
    double v = 0.0;
    const auto& s = raw(key);
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

bool Config::get_bool(const std::string& key) const {
    return raw(key) == "true";
}

std::string Config::get_string(const std::string& key) const {
    return raw(key);
}

std::vector<double> Config::get_doubles(const std::string& key) const {
    std::vector<double> out;
    for (auto item : split(raw(key), ',')) {
        double v = 0.0;
        std::from_chars(item.data(), item.data() + item.size(), v);
        out.push_back(v);
    }
    return out;
}

std::vector<int> Config::get_ints(const std::string& key) const {
    std::vector<int> out;
    for (auto item : split(raw(key), ',')) {
        int v = 0;
        std::from_chars(item.data(), item.data() + item.size(), v);
        out.push_back(v);
    }
    return out;
}

} // namespace catrep::cli
