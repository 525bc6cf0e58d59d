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

#include "catrep/breeding.hpp"
#include "catrep/rng.hpp"
#include "catrep/swapping.hpp"
#include "catrep/target.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace catrep;

namespace {

double phase_gap(double a, double b) {
    return std::abs(std::remainder(a - b, std::numbers::pi));
}

fock::PureState forced_dual_rail(int m) {
    return breeding::from_pm(fock::tensor(breeding::forced_zero_state(m), fock::vacuum(1, 0)));
}

} // namespace

TEST_CASE("amplitudes") {
    CHECK(target::final_amplitude(2, 0) == doctest::Approx(breeding::mu(2) / std::sqrt(2.0)));
    CHECK(target::final_amplitude(2, 1) == doctest::Approx(breeding::mu(2) / std::sqrt(3.0)));
    CHECK(target::final_amplitude(2, 12) ==
          doctest::Approx(target::local_amplitude(2)).epsilon(1e-6));
}

TEST_CASE("best_phase against a brute-force scan") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const Complex up(rng.uniform() - 0.5, rng.uniform() - 0.5);
        const Complex um(rng.uniform() - 0.5, rng.uniform() - 0.5);
        const Complex npm(0.3 * (rng.uniform() - 0.5), 0.3 * (rng.uniform() - 0.5));
        const auto fit = target::best_phase(up, um, 1.0, 1.0, npm);
        double best = 0.0;
        for (int i = 0; i < 200000; ++i) {
            const double phi = std::numbers::pi * (i / 200000.0 - 0.5);
            const Complex e = std::polar(1.0, -phi);
            const double num = std::norm(e * up + std::conj(e) * um);
            const double den = 2.0 + 2.0 * (e * e * npm).real();
            best = std::max(best, num / den);
        }
        CHECK(fit.fidelity == doctest::Approx(best).epsilon(1e-8));
    }
}

TEST_CASE("target states are recognised with their phase") {
    const auto br = target::final_target_branches(2, 1, 30);
    for (double phi : {0.0, 0.4, -1.1}) {
        const auto t = target::final_target(2, 1, phi, 30);
        const auto fit = target::best_phase_fidelity(t, br);
        CHECK(fit.fidelity == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(phase_gap(fit.phi, phi) < 1e-5);
    }
}

TEST_CASE("zero-connection target matches the breeding target") {
    // With no swaps the dual-rail state is psi_m on the + mode, so its
    // fidelity must equal that of psi_m with S(2)|cat(mu_m)>.
    for (int m = 1; m <= 3; ++m) {
        const double single = breeding::fidelity_padded(breeding::ideal_psi(m, breeding::ideal_cutoff(m)),
                                                        breeding::target_state(m, breeding::target_cutoff(m)));
        const auto fit = target::best_phase_fidelity(forced_dual_rail(m),
                                                     target::final_target_branches(m, 0, 40));
        CHECK(fit.fidelity == doctest::Approx(single).epsilon(1e-6));
    }
}

TEST_CASE("forced-zero chain against the nested target") {
    const auto local = forced_dual_rail(2);
    const auto swapped = swapping::swap_simple_forced(local, local, 0.0, 0.0).out.normalized();
    const auto fit = target::best_phase_fidelity(swapped, target::final_target_branches(2, 1, 30));
    CHECK(fit.fidelity > 0.99);
}

TEST_CASE("momentum kicks are undone") {
    const double beta = target::local_amplitude(2);
    const auto br = target::local_target_branches(beta, 30);
    auto s = target::local_target(beta, 0.2, 30);
    s = fock::apply_displacement(s, 0, Complex(0.0, 0.25 / std::numbers::sqrt2), 40);
    s = fock::apply_displacement(s, 1, Complex(0.0, -0.15 / std::numbers::sqrt2), 40);
    const auto fock_fit = target::optimize_correction(s, br);
    CHECK(fock_fit.fidelity == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fock_fit.kick_a == doctest::Approx(-0.25).epsilon(1e-3));
    CHECK(fock_fit.kick_b == doctest::Approx(0.15).epsilon(1e-3));

    const target::GridFidelity grid(beta);
    const auto grid_fit = grid.optimize(s);
    CHECK(grid_fit.fidelity == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(grid.evaluate(s, fock_fit) == doctest::Approx(fock_fit.fidelity).epsilon(1e-6));
}

TEST_CASE("grid and Fock fidelities agree on a bred state") {
    const double beta = target::local_amplitude(2);
    const auto s = forced_dual_rail(2);
    const auto fock_fit = target::optimize_correction(s, target::local_target_branches(beta, 40));
    const target::GridFidelity grid(beta);
    CHECK(grid.evaluate(s, fock_fit) == doctest::Approx(fock_fit.fidelity).epsilon(1e-6));
}
