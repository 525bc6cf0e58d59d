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

#include "doctest.h"

#include <string>

using catrep::cli::Config;
using catrep::cli::ConfigError;

namespace {

std::string error_key(const std::string& text) {
    try {
        Config::parse(text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<none>";
}

} // namespace

TEST_CASE("defaults") {
    const Config c;
    CHECK(c.get_u64("seed") == 1);
    CHECK(c.get_int("trials") == 10000);
    CHECK(c.get_ints("fig2.m") == std::vector<int>{1, 2, 3});
    CHECK(c.get_doubles("fig3.L_km").size() == 10);
    CHECK(c.get_string("breed.rate_model") == "throughput");
    CHECK(c.get_bool("breed.memory"));
}

TEST_CASE("round trip") {
    Config c;
    c.set("breed.delta", "0.25");
    c.set("fig2.delta", " 0.1 , 0.30 ");
    c.set("breed.memory", "off");
    c.set("out", "x.csv");
    const auto again = Config::parse(c.serialize());
    CHECK(again == c);
    CHECK(again.raw("fig2.delta") == "0.1,0.3");
    CHECK(again.raw("breed.memory") == "false");
    CHECK(Config::parse(Config().serialize()) == Config());
}

TEST_CASE("comments and blank lines") {
    const auto c = Config::parse("# comment\n\nseed = 42\n  workers=3  \n");
    CHECK(c.get_u64("seed") == 42);
    CHECK(c.get_int("workers") == 3);
}

TEST_CASE("errors name the key") {
    CHECK(error_key("bogus = 1\n") == "bogus");
    CHECK(error_key("trials = 1\n") == "trials");
    CHECK(error_key("breed.delta = abc\n") == "breed.delta");
    CHECK(error_key("breed.rate_model = fastest\n") == "breed.rate_model");
    CHECK(error_key("fig2.m = 1,x\n") == "fig2.m");
    CHECK(error_key("seed = 1\nseed = 2\n") == "seed");
    CHECK(error_key("no equals sign\n").empty());
    try {
        Config::parse("fig3.F_target = 2\n");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("fig3.F_target") != std::string::npos);
    }
}
