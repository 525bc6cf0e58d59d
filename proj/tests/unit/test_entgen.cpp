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

#include "catrep/entgen.hpp"
#include "catrep/error.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace catrep;

namespace {

// The heralding arms carry thermal light of mean N = eta p / (1 - p) each
// (equal thermal inputs stay thermal behind a balanced beam splitter), so the
// exact pattern probabilities follow from the thermal distribution.
double thermal_mean(const entgen::SourceParams& s) {
    return entgen::transmission(s) * s.eta_d * s.p / (1.0 - s.p);
}

} // namespace

TEST_CASE("transmission") {
    entgen::SourceParams s;
    s.L0_km = 40.0;
    s.Latt_km = 20.0;
    CHECK(entgen::transmission(s) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("threshold heralding probability") {
    for (double p : {1e-3, 1e-2, 0.05}) {
        entgen::SourceParams s;
        s.p = p;
        const auto h = entgen::heralded_state(s, entgen::default_truncation(p));
        const double n = thermal_mean(s);
        CHECK(h.p_succ == doctest::Approx(2.0 * n / ((1.0 + n) * (1.0 + n))).epsilon(1e-6));
        CHECK(h.attempt_time_s == doctest::Approx(s.L0_km / s.c_kms));
        CHECK(h.state.total_weight() == doctest::Approx(1.0));
    }
}

TEST_CASE("number-resolving heralding probability") {
    entgen::SourceParams s;
    s.p = 0.02;
    const auto h = entgen::heralded_state(s, entgen::default_truncation(s.p),
                                          entgen::Detection::NumberResolving);
    const double n = thermal_mean(s);
    CHECK(h.p_succ == doctest::Approx(2.0 * n / std::pow(1.0 + n, 3)).epsilon(1e-6));
}

TEST_CASE("single-excitation limit") {
    entgen::SourceParams s;
    s.p = 1e-7;
    const auto h = entgen::heralded_state(s, 1);
    // Dominant branch (|01> + |10>)/sqrt2.
    double best = 0.0;
    for (const auto& b : h.state.branches()) {
        const double f = std::norm((b.state[{0, 1}] + b.state[{1, 0}]) / std::numbers::sqrt2);
        best = std::max(best, b.weight * f);
    }
    CHECK(best > 1.0 - 1e-6);
    CHECK(entgen::multi_excitation_weight(s, 1) < 1e-6);
}

TEST_CASE("multi-excitation weight grows with p") {
    double last = 0.0;
    for (double p : {1e-4, 1e-3, 1e-2, 0.05}) {
        entgen::SourceParams s;
        s.p = p;
        const double w = entgen::multi_excitation_weight(s, entgen::default_truncation(p));
        CHECK(w > last);
        last = w;
    }
}

TEST_CASE("truncation guard") {
    CHECK(entgen::default_truncation(0.01) == 3);
    CHECK(entgen::default_truncation(0.1) == 8);
    entgen::SourceParams s;
    s.p = 0.1;
    CHECK_THROWS_AS(entgen::heralded_state(s, 3), InvalidArgument);
    s.p = 1.2;
    CHECK_THROWS_AS(entgen::heralded_state(s, 3), InvalidArgument);
}
