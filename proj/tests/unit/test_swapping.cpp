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

#include "catrep/coherent_sum.hpp"
#include "catrep/swapping.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace catrep;

namespace {

double phase_gap(double a, double b) {
    return std::abs(std::remainder(a - b, std::numbers::pi));
}

} // namespace

TEST_CASE("k_n recursion against the closed form") {
    for (int n = 0; n <= 10; ++n) {
        CHECK(swapping::k_n(n) == doctest::Approx(oracle::k_closed(n)).epsilon(1e-12));
    }
    CHECK(swapping::k_n(0) == doctest::Approx(2.0));
    CHECK(swapping::k_n(1) == doctest::Approx(3.0));
}

TEST_CASE("simple swap acceptance") {
    // For well separated cats the difference port is 1/2 N(0) + 1/4 N(+-2 alpha),
    // each Gaussian with variance 1/2.
    const double alpha = 2.5;
    const auto c = cat::cat_two(alpha, 0.0).normalized();
    for (double d : {0.5, 1.0, alpha, 3.5}) {
        const double expect = 0.5 * std::erf(d) +
                              0.25 * (std::erf(d - 2 * alpha) + std::erf(d + 2 * alpha));
        CHECK(swapping::swap_simple_acceptance_exact(c, c, d) == doctest::Approx(expect).epsilon(1e-5));
    }
    CHECK(swapping::swap_simple_acceptance_exact(c, c, swapping::default_cut(alpha)) ==
          doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("Fock and analytic engines agree on the simple swap") {
    const double alpha = 1.6;
    const int cut = fock::cutoff_for_amplitude(alpha);
    const auto c = cat::cat_two(alpha, 0.3).normalized();
    const auto fc = cat::to_fock(c, cut);
    CHECK(swapping::swap_acceptance(fc, fc, 0.7) ==
          doctest::Approx(swapping::swap_simple_acceptance_exact(c, c, 0.7)).epsilon(1e-8));
    for (double p0 : {0.0, 0.31, -0.8}) {
        const auto fock_out = swapping::swap_simple_forced(fc, fc, p0, 0.2).out;
        const auto exact = swapping::swap_simple_exact(c, c, alpha, p0, 0.2);
        const auto ref = cat::to_fock(exact.out, fock_out.cutoffs());
        CHECK(fock::fidelity(fock_out.normalized(), ref.normalized()) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("swap phase law") {
    const double alpha = 2.0;
    const auto c = cat::cat_two(alpha, 0.0).normalized();
    for (double p0 : {-0.6, -0.1, 0.25, 0.7}) {
        const auto r = swapping::swap_simple_exact(c, c, alpha, p0, 0.0);
        CHECK(r.theta_phases.at(0) == doctest::Approx(-2.0 * alpha * p0));
        CHECK(phase_gap(swapping::relative_phase(r.out, alpha), -2.0 * alpha * p0) < 1e-6);
    }
}

TEST_CASE("auxiliary swap acceptance approaches 1 - 2^-(k+1)") {
    for (int k = 1; k <= 3; ++k) {
        const double alpha = 2.0 * std::pow(2.0, 0.5 * k);
        const auto c = cat::cat_two(alpha, 0.0).normalized();
        const double acc = swapping::swap_aux_acceptance(c, c, k, alpha);
        CHECK(std::abs(acc - (1.0 - std::ldexp(1.0, -k - 1))) < 1e-2);
        const auto peaks = swapping::aux_peaks(swapping::swap_aux_state(c, c, k, alpha));
        CHECK(std::is_sorted(peaks.begin(), peaks.end()));
    }
}

TEST_CASE("one-auxiliary swap: Fock pipeline against the analytic engine") {
    const double alpha = 1.2;
    const int cut = fock::cutoff_for_amplitude(alpha);
    const auto c = cat::cat_two(alpha, 0.0).normalized();
    const auto fc = cat::to_fock(c, cut);
    const double p0 = 0.15;
    const double p1 = -0.2;
    const double x = 0.1;
    const auto f = swapping::swap_aux1_fock(fc, fc, alpha, p0, p1, x);
    const auto e = swapping::swap_aux(c, c, 1, alpha, {p0, p1}, x);
    const auto ref = cat::to_fock(e.out, f.cutoffs());
    CHECK(fock::fidelity(f.normalized(), ref.normalized()) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(e.theta_phases.size() == 2);
}

TEST_CASE("cat coefficients recover the input") {
    const double alpha = 1.5;
    const double theta = 0.4;
    const auto c = cat::cat_two(alpha, theta).normalized();
    CHECK(phase_gap(swapping::relative_phase(c, alpha), theta) < 1e-9);
    const auto f = cat::to_fock(c, fock::cutoff_for_amplitude(alpha));
    CHECK(phase_gap(swapping::relative_phase(f, alpha), theta) < 1e-7);
}
