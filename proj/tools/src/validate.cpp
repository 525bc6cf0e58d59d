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

#include "catrep_cli/commands.hpp"

#include "catrep/breeding.hpp"
#include "catrep/coherent_sum.hpp"
#include "catrep/entgen.hpp"
#include "catrep/repeater.hpp"
#include "catrep/rng.hpp"
#include "catrep/swapping.hpp"
#include "catrep/target.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace catrep::cli {

namespace {

double phase_distance(double a, double b) {
    // Relative phases are defined modulo pi.
    const double d = std::remainder(a - b, std::numbers::pi);
    return std::abs(d);
}

CheckResult at_least(std::string id, double measured, double bound) {
    return {std::move(id), measured >= bound, measured, bound};
}

CheckResult at_most(std::string id, double measured, double bound) {
    return {std::move(id), measured <= bound, measured, bound};
}

cat::CoherentSum random_sum(Rng& rng, int modes) {
    const int terms = 1 + static_cast<int>(rng.index(6));
    cat::CoherentSum s(modes);
    for (int t = 0; t < terms; ++t) {
        std::vector<Complex> amps;
        for (int m = 0; m < modes; ++m) {
            amps.push_back(std::polar(2.5 * std::sqrt(rng.uniform()),
                                      2.0 * std::numbers::pi * rng.uniform()));
        }
        s.add(Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0), amps);
    }
    return s;
}

} // namespace

std::vector<CheckResult> run_validation(const Config& config) {
    std::vector<CheckResult> out;
    const auto seed = config.get_u64("seed");

    for (int m = 1; m <= 3; ++m) {
        const auto f = breeding::fidelity_padded(breeding::forced_zero_state(m),
                                                 breeding::ideal_psi(m, breeding::ideal_cutoff(m)));
        out.push_back(at_most("forced_zero_breeding_infidelity_m" + std::to_string(m), 1.0 - f, 1e-8));
    }
    for (int m = 2; m <= 3; ++m) {
        const auto f = breeding::fidelity_padded(breeding::ideal_psi(m, breeding::ideal_cutoff(m)),
                                                 breeding::target_state(m, breeding::target_cutoff(m)));
        out.push_back(at_least("breeding_target_fidelity_m" + std::to_string(m), f, 0.99));
    }

    out.push_back(at_most("k0_equals_2", std::abs(swapping::k_n(0) - 2.0), 1e-12));
    out.push_back(at_most("k1_equals_3", std::abs(swapping::k_n(1) - 3.0), 1e-12));
    double k_err = 0.0;
    for (int n = 4; n <= 10; ++n) {
        k_err = std::max(k_err, std::abs(swapping::k_n(n) - 2.0 * std::numbers::sqrt2));
    }
    out.push_back(at_most("k_n_limit_n4_to_10", k_err, 1e-3));

    {
        const auto c = cat::cat_two(2.5, 0.0).normalized();
        const double acc = swapping::swap_simple_acceptance_exact(c, c, swapping::default_cut(2.5));
        out.push_back(at_most("simple_swap_acceptance_alpha2.5", std::abs(acc - 0.5), 1e-3));
    }
    for (int k = 1; k <= 3; ++k) {
        const double alpha = 2.0 * std::pow(2.0, 0.5 * k);
        const auto c = cat::cat_two(alpha, 0.0).normalized();
        const double acc = swapping::swap_aux_acceptance(c, c, k, alpha);
        out.push_back(at_most("aux_swap_acceptance_k" + std::to_string(k),
                              std::abs(acc - (1.0 - std::ldexp(1.0, -k - 1))), 1e-2));
    }
    {
        Rng rng(derive_seed(seed, {0x9a}));
        const double alpha = 2.0;
        const auto c = cat::cat_two(alpha, 0.0).normalized();
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double p0 = 2.0 * rng.uniform() - 1.0;
            const auto r = swapping::swap_simple_exact(c, c, alpha, p0, 0.0);
            worst = std::max(worst, phase_distance(swapping::relative_phase(r.out, alpha),
                                                   -2.0 * alpha * p0));
        }
        out.push_back(at_most("swap_phase_law", worst, 1e-6));
    }
    {
        Rng rng(derive_seed(seed, {0xce}));
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const int modes = 1 + static_cast<int>(rng.index(2));
            const auto a = random_sum(rng, modes);
            const auto b = random_sum(rng, modes);
            const int cut = fock::cutoff_for_amplitude(2.5);
            const auto fa = cat::to_fock(a, cut);
            const auto fb = cat::to_fock(b, cut);
            worst = std::max(worst, std::abs(a.norm2() - fa.norm2()) / std::max(1.0, a.norm2()));
            worst = std::max(worst, std::abs(cat::overlap(a, b) - fock::inner(fa, fb)) /
                                        std::max(1.0, std::sqrt(a.norm2() * b.norm2())));
        }
        out.push_back(at_most("coherent_sum_vs_fock", worst, 1e-8));
    }
    {
        const int m = 2;
        const auto local = breeding::from_pm(
            fock::tensor(breeding::forced_zero_state(m), fock::vacuum(1, 0)));
        const auto swapped = swapping::swap_simple_forced(local, local, 0.0, 0.0).out;
        const auto fit = target::best_phase_fidelity(swapped.normalized(),
                                                     target::final_target_branches(m, 1, 30));
        out.push_back(at_least("end_to_end_forced_zero_m2_n1", fit.fidelity, 0.98));
    }
    {
        entgen::SourceParams s;
        s.p = 1e-4;
        const auto h = entgen::heralded_state(s, 2);
        const double eta = entgen::transmission(s) * s.eta_d;
        out.push_back(at_most("entgen_low_p_success", std::abs(h.p_succ / (2.0 * s.p * eta) - 1.0), 1e-2));
    }
    {
        const double t = repeater::waiting_time(1.0, 1.0, {1.0, 1.0, 1.0});
        out.push_back(at_most("waiting_time_unit_probs", std::abs(t - 3.375), 1e-12));
        const double t1 = repeater::waiting_time(1.0, 1.0, {0.5});
        out.push_back(at_most("waiting_time_half_swap", std::abs(t1 - 3.0), 1e-12));
    }
    return out;
}

} // namespace catrep::cli
