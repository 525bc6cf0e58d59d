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

#include "catrep/error.hpp"
#include "catrep/fock.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace catrep;
using fock::PureState;

namespace {

double distance(const PureState& a, const PureState& b) {
    REQUIRE(a.same_shape(b));
    double d = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        d = std::max(d, std::abs(a.amplitudes()[k] - b.amplitudes()[k]));
    }
    return d;
}

} // namespace

TEST_CASE("coherent amplitudes") {
    const Complex alpha(1.3, -0.4);
    const auto s = fock::coherent(alpha, 30);
    for (int n = 0; n <= 30; ++n) {
        CHECK(std::abs(s[{n}] - oracle::coherent_amp(alpha, n)) < 1e-14);
    }
    CHECK(s.norm2() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("cutoff rule is enforced") {
    CHECK(fock::cutoff_for_amplitude(2.5) == 32);
    CHECK(fock::cutoff_for_amplitude(0.0) == 10);
    CHECK_THROWS_AS(fock::coherent(2.5, 20), InsufficientCutoff);
    CHECK_NOTHROW(fock::coherent(2.5, 32));
}

TEST_CASE("beam splitter maps coherent pairs") {
    const Complex a(0.8, 0.3);
    const Complex b(-0.5, 0.6);
    const int c = 24;
    const auto in = fock::tensor(fock::coherent(a, c), fock::coherent(b, c));
    const auto out = fock::apply_beamsplitter(in, 0, 1);
    const auto expect = fock::tensor(fock::coherent((a + b) / std::numbers::sqrt2, c),
                                     fock::coherent((a - b) / std::numbers::sqrt2, c));
    CHECK(distance(out, expect) < 1e-10);
}

TEST_CASE("beam splitter on photon pairs") {
    const auto one = fock::apply_beamsplitter(fock::fock_state({1, 0}, {1, 1}), 0, 1);
    CHECK(std::abs(one[{1, 0}] - 1.0 / std::numbers::sqrt2) < 1e-15);
    CHECK(std::abs(one[{0, 1}] - 1.0 / std::numbers::sqrt2) < 1e-15);

    const auto hom = fock::apply_beamsplitter(fock::fock_state({1, 1}, {1, 1}), 0, 1, 2, 2);
    CHECK(std::abs(hom[{2, 0}] - 1.0 / std::numbers::sqrt2) < 1e-15);
    CHECK(std::abs(hom[{0, 2}] + 1.0 / std::numbers::sqrt2) < 1e-15);
    CHECK(std::abs(hom[{1, 1}]) < 1e-15);
}

TEST_CASE("beam splitter is an involution and acts on any mode pair") {
    const auto s = fock::tensor(fock::tensor(fock::coherent(0.4, 16), fock::fock_state({2}, {3})),
                                fock::coherent(Complex(0, 0.7), 16));
    const auto once = fock::apply_beamsplitter(s, 0, 2, 32, 32);
    const auto twice = fock::apply_beamsplitter(once, 0, 2, 16, 16);
    CHECK(distance(twice, s) < 1e-12);
    CHECK(once.norm2() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("squeezed vacuum wavefunction and variance") {
    const double sq = 2.0;
    const auto s = fock::apply_squeeze(fock::vacuum(1, 0), 0, sq, 40);
    for (double x : {-1.5, 0.0, 0.4, 1.1}) {
        const double expect = std::pow(sq, 0.25) * std::pow(std::numbers::pi, -0.25) *
                              std::exp(-0.5 * sq * x * x);
        CHECK(std::abs(fock::wavefunction(s, Quadrature::X, x) - expect) < 1e-9);
    }
    CHECK(fock::quadrature_variance(s, 0, Quadrature::X) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(fock::quadrature_variance(s, 0, Quadrature::P) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("squeezing composes and inverts") {
    const auto c = fock::coherent(0.6, 20);
    const auto s = fock::apply_squeeze(fock::apply_squeeze(c, 0, 1.5, 60), 0, 1.0 / 1.5, 20);
    CHECK(distance(s, c) < 1e-8);
}

TEST_CASE("displacement and rotation of coherent states") {
    const auto d = fock::apply_displacement(fock::vacuum(1, 0), 0, Complex(0.9, -0.2), 30);
    CHECK(distance(d, fock::coherent(Complex(0.9, -0.2), 30)) < 1e-13);
    const auto r = fock::apply_phase_rotation(fock::coherent(1.1, 30), 0, 0.7);
    CHECK(distance(r, fock::coherent(std::polar(1.1, 0.7), 30)) < 1e-13);
    // The kick D(i k / sqrt2) shifts <p> by k.
    const auto kicked = fock::apply_displacement(fock::coherent(0.5, 25), 0,
                                                 Complex(0.0, 0.3 / std::numbers::sqrt2), 30);
    CHECK(fock::quadrature_mean(kicked, 0, Quadrature::P) == doctest::Approx(0.3).epsilon(1e-10));
}

TEST_CASE("quadrature wavefunctions and moments of coherent states") {
    const Complex alpha(0.7, -0.45);
    const auto s = fock::coherent(alpha, 30);
    for (double q : {-1.2, 0.0, 0.9, 2.0}) {
        CHECK(std::abs(fock::wavefunction(s, Quadrature::X, q) - oracle::coherent_x(alpha, q)) < 1e-12);
        CHECK(std::abs(fock::wavefunction(s, Quadrature::P, q) - oracle::coherent_p(alpha, q)) < 1e-12);
    }
    CHECK(fock::quadrature_mean(s, 0, Quadrature::X) == doctest::Approx(std::sqrt(2.0) * alpha.real()));
    CHECK(fock::quadrature_mean(s, 0, Quadrature::P) == doctest::Approx(std::sqrt(2.0) * alpha.imag()));
    CHECK(fock::quadrature_variance(s, 0, Quadrature::X) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cat constructors and fidelity") {
    const double a = 1.4;
    const auto cat = fock::cat_single(a, 30);
    CHECK(cat.norm2() == doctest::Approx(1.0));
    // <cat|alpha> for the normalised even cat.
    const double n2 = 2.0 + 2.0 * std::exp(-2.0 * a * a);
    const double expect = std::norm(1.0 + std::exp(-2.0 * a * a)) / n2;
    CHECK(fock::fidelity(cat, fock::coherent(a, 30)) == doctest::Approx(expect).epsilon(1e-12));
    for (int n = 1; n <= 29; n += 2) {
        CHECK(std::abs(cat[{n}]) < 1e-15);
    }
    const auto two = fock::cat_two(1.0, 0.3, 20);
    CHECK(two.norm2() == doctest::Approx(1.0));
}

TEST_CASE("embed, trim and permute") {
    const auto s = fock::tensor(fock::fock_state({1}, {2}), fock::coherent(0.3, 12));
    const auto grown = fock::embed(s, {5, 15});
    CHECK(grown.norm2() == doctest::Approx(s.norm2()));
    CHECK_THROWS_AS(fock::embed(fock::coherent(2.0, 30), {3}), InsufficientCutoff);
    const auto t = fock::trimmed(grown, 1e-14);
    CHECK(t.cutoff(0) == 1);
    CHECK(t.cutoff(1) < 15);
    const auto p = fock::permuted(s, {1, 0});
    CHECK(p.cutoff(0) == 12);
    CHECK(std::abs(p[{3, 1}] - s[{1, 3}]) < 1e-16);
}

TEST_CASE("mixtures") {
    fock::BranchEnsemble e;
    e.add(0.25, fock::fock_state({0}, {1}));
    e.add(0.5, fock::fock_state({1}, {1}));
    CHECK(e.total_weight() == doctest::Approx(0.75));
    e.renormalize();
    CHECK(e.total_weight() == doctest::Approx(1.0));
    CHECK(e.pick(0.1) == 0);
    CHECK(e.pick(0.5) == 1);
    CHECK(fock::fidelity(e, fock::fock_state({1}, {1})) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("JSON dump") {
    const auto j = fock::to_json(fock::fock_state({1}, {1}));
    CHECK(j.find("\"cutoffs\"") != std::string::npos);
    CHECK(j.find("\"amplitudes\"") != std::string::npos);
}
