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
#include "catrep/homodyne.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <numbers>

using namespace catrep;

TEST_CASE("marginal of a coherent state is its squared wavefunction") {
    const Complex alpha(0.9, 0.4);
    const auto s = fock::coherent(alpha, 30);
    const fock::MarginalDensity dx(s, 0, Quadrature::X);
    const fock::MarginalDensity dp(s, 0, Quadrature::P);
    for (double q : {-1.0, 0.2, 1.3, 2.5}) {
        CHECK(dx(q) == doctest::Approx(std::norm(oracle::coherent_x(alpha, q))).epsilon(1e-11));
        CHECK(dp(q) == doctest::Approx(std::norm(oracle::coherent_p(alpha, q))).epsilon(1e-11));
        CHECK(fock::homodyne_density(s, 0, Quadrature::X, q) == doctest::Approx(dx(q)));
    }
    CHECK(dx.integral(-20.0, 20.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vacuum window probability is erf") {
    const auto v = fock::vacuum(1, 0);
    CHECK(fock::window_probability(v, 0, Quadrature::X, -1.0, 1.0) ==
          doctest::Approx(std::erf(1.0)).epsilon(1e-13));
    const auto one = fock::fock_state({1}, {1});
    // psi_1^2 integrates to erf(a) - 2a e^{-a^2}/sqrt(pi) over [-a, a].
    const double a = 0.8;
    CHECK(fock::window_probability(one, 0, Quadrature::X, -a, a) ==
          doctest::Approx(std::erf(a) - 2.0 * a * std::exp(-a * a) / std::sqrt(std::numbers::pi))
              .epsilon(1e-12));
}

TEST_CASE("projection of a product state") {
    const Complex a(0.5, 0.0);
    const Complex b(-0.3, 0.6);
    const auto s = fock::tensor(fock::coherent(a, 20), fock::coherent(b, 20));
    const auto pr = fock::homodyne_project(s, 0, Quadrature::X, 0.35);
    CHECK(pr.density == doctest::Approx(std::norm(oracle::coherent_x(a, 0.35))).epsilon(1e-12));
    CHECK(pr.state.modes() == 1);
    CHECK(fock::fidelity(pr.state, fock::coherent(b, 20)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("reduced density has the state's norm as trace") {
    const auto s = fock::tensor(fock::cat_single(1.0, 20), fock::coherent(0.2, 12));
    const auto rho = fock::reduced_density(s, 0);
    double tr = 0.0;
    for (int n = 0; n <= 20; ++n) {
        tr += rho[static_cast<std::size_t>(n * 21 + n)].real();
    }
    CHECK(tr == doctest::Approx(s.norm2()).epsilon(1e-13));
}

TEST_CASE("sampled outcomes follow the marginal") {
    const auto v = fock::vacuum(1, 0);
    const fock::MarginalDensity d(v, 0, Quadrature::X);
    Rng rng(2024);
    double sum = 0.0;
    double sum2 = 0.0;
    int inside = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double x = fock::sample_outcome(d, -100.0, 100.0, rng);
        sum += x;
        sum2 += x * x;
        inside += std::abs(x) <= 0.5 ? 1 : 0;
    }
    CHECK(std::abs(sum / n) < 4.0 * std::sqrt(0.5 / n));
    CHECK(sum2 / n == doctest::Approx(0.5).epsilon(0.03));
    CHECK(static_cast<double>(inside) / n == doctest::Approx(std::erf(0.5)).epsilon(0.03));

    // Restricted window.
    for (int i = 0; i < 200; ++i) {
        const double x = fock::sample_outcome(d, 0.2, 0.4, rng);
        CHECK(x >= 0.2);
        CHECK(x <= 0.4);
    }
}

TEST_CASE("full-line sample returns a normalised conditional state") {
    Rng rng(5);
    const auto s = fock::apply_beamsplitter(fock::fock_state({1, 1}, {2, 2}), 0, 1);
    const auto r = fock::homodyne_sample(s, 1, Quadrature::P, rng);
    CHECK(r.state.norm2() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.state.modes() == 1);
    CHECK_THROWS_AS(fock::homodyne_sample(fock::PureState({2}), 0, Quadrature::X, rng), DegenerateState);
}
