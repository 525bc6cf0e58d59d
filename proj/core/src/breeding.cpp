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

#include "catrep/error.hpp"
#include "catrep/homodyne.hpp"
#include "catrep/population.hpp"
#include "catrep/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace catrep::breeding {

using fock::PureState;

double mu(int m) {
    return std::sqrt(std::ldexp(1.0, m) + 0.5);
}

int ideal_cutoff(int m) {
    const double n = std::ldexp(1.0, m);
    return static_cast<int>(std::ceil(n + 6.0 * std::sqrt(n) + 10.0 - 1e-9));
}

PureState ideal_psi(int m, int cutoff) {
    if (m < 0) {
        throw InvalidArgument("ideal_psi: m must be non-negative");
    }
    if (cutoff < ideal_cutoff(m)) {
        throw InsufficientCutoff("ideal_psi: insufficient cutoff " + std::to_string(cutoff) +
                                 " (need >= " + std::to_string(ideal_cutoff(m)) + ")");
    }
    // x^N e^{-x^2/2} = sum_k N! / (2^N k! n!) H_n(x) e^{-x^2/2}, n = N - 2k, and
    // H_n e^{-x^2/2} = sqrt(2^n n! sqrt(pi)) psi_n.
    const int big_n = 1 << m;
    PureState s({cutoff});
    auto amps = s.amplitudes();
    const double log_norm = -0.5 * std::lgamma(big_n + 0.5);
    for (int k = 0; 2 * k <= big_n; ++k) {
        const int n = big_n - 2 * k;
        const double lg = log_norm + std::lgamma(big_n + 1.0) - big_n * std::log(2.0) -
                          std::lgamma(k + 1.0) - std::lgamma(n + 1.0) +
                          0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0) +
                                 0.5 * std::log(std::numbers::pi));
        amps[static_cast<std::size_t>(n)] = std::exp(lg);
    }
    return s;
}

int target_cutoff(int m) {
    return fock::cutoff_for_amplitude(mu(m)) + 10;
}

PureState target_state(int m, int cutoff) {
    const PureState cat = fock::cat_single(mu(m), cutoff);
    return fock::apply_squeeze(cat, 0, 2.0, cutoff).normalized();
}

double fidelity_padded(const PureState& state, const PureState& reference) {
    if (state.modes() != reference.modes()) {
        throw ShapeMismatch("fidelity_padded: mode counts differ");
    }
    std::vector<int> cut(static_cast<std::size_t>(state.modes()));
    for (int k = 0; k < state.modes(); ++k) {
        cut[static_cast<std::size_t>(k)] = std::max(state.cutoff(k), reference.cutoff(k));
    }
    return fock::fidelity(fock::embed(state, cut), fock::embed(reference, cut));
}

namespace {

// Mixed pair with the difference port (mode 1) still to be measured.
PureState mix_single(const PureState& a, const PureState& b) {
    if (a.modes() != 1 || b.modes() != 1) {
        throw ShapeMismatch("breed_step: single-mode inputs expected");
    }
    const int d = a.cutoff(0) + b.cutoff(0);
    return fock::apply_beamsplitter(fock::tensor(a, b), 0, 1, d, d);
}

// Pair of (+, -) states mixed rail by rail; modes (+1, -1, +2, -2).
PureState mix_dual(const PureState& a, const PureState& b) {
    if (a.modes() != 2 || b.modes() != 2) {
        throw ShapeMismatch("dual-rail step: two-mode inputs expected");
    }
    const int dp = a.cutoff(0) + b.cutoff(0);
    const int dm = a.cutoff(1) + b.cutoff(1);
    PureState s = fock::tensor(a, b);
    s = fock::apply_beamsplitter(s, 0, 2, dp, dp);
    return fock::apply_beamsplitter(s, 1, 3, dm, dm);
}

PureState finish(const fock::Projection& p) {
    if (!(p.density > 0.0)) {
        throw DegenerateState("breed_step: conditional state has zero norm");
    }
    return fock::trimmed(p.state.normalized());
}

} // namespace

double step_acceptance(const PureState& a, const PureState& b, double delta) {
    const PureState mixed = mix_single(a, b);
    return fock::MarginalDensity(mixed, 1, Quadrature::X).integral(-delta, delta) / mixed.norm2();
}

StepResult breed_step(const PureState& a, const PureState& b, double delta, Rng& rng,
                      double sampler_step) {
    const PureState mixed = mix_single(a, b);
    const fock::MarginalDensity density(mixed, 1, Quadrature::X);
    StepResult r;
    r.acceptance = delta > 0.0 ? density.integral(-delta, delta) / mixed.norm2() : 0.0;
    if (!rng.bernoulli(r.acceptance)) {
        return r;
    }
    r.x = fock::sample_outcome(density, -delta, delta, rng, sampler_step);
    r.out = finish(fock::homodyne_project(mixed, 1, Quadrature::X, r.x));
    r.accepted = true;
    return r;
}

StepResult breed_step_forced(const PureState& a, const PureState& b, double x) {
    const PureState mixed = mix_single(a, b);
    StepResult r;
    r.x = x;
    r.out = finish(fock::homodyne_project(mixed, 1, Quadrature::X, x));
    r.accepted = true;
    return r;
}

PureState to_pm(const PureState& s) {
    if (s.modes() != 2) {
        throw ShapeMismatch("to_pm: two-mode state expected");
    }
    const int d = s.cutoff(0) + s.cutoff(1);
    return fock::trimmed(fock::apply_beamsplitter(s, 0, 1, d, d), 1e-16);
}

PureState from_pm(const PureState& s) {
    return to_pm(s);
}

StepResult breed_step_dual_local_forced(const PureState& a, const PureState& b, double ya,
                                        double yb) {
    if (a.modes() != 2 || b.modes() != 2) {
        throw ShapeMismatch("dual-rail step: two-mode inputs expected");
    }
    // Local modes (a1, b1, a2, b2); rails mixed as (a1, a2) and (b1, b2).
    const int da = a.cutoff(0) + b.cutoff(0);
    const int db = a.cutoff(1) + b.cutoff(1);
    PureState s = fock::tensor(a, b);
    s = fock::apply_beamsplitter(s, 0, 2, da, da);
    s = fock::apply_beamsplitter(s, 1, 3, db, db);
    auto pb = fock::homodyne_project(s, 3, Quadrature::X, yb);
    auto pa = fock::homodyne_project(pb.state, 2, Quadrature::X, ya);
    StepResult r;
    r.x = (ya + yb) / std::numbers::sqrt2;
    r.x_anti = (ya - yb) / std::numbers::sqrt2;
    r.out = finish(pa);
    r.accepted = true;
    return r;
}

double dual_step_acceptance(const PureState& a_pm, const PureState& b_pm, double delta) {
    const PureState mixed = mix_dual(a_pm, b_pm);
    return fock::MarginalDensity(mixed, 2, Quadrature::X).integral(-delta, delta) / mixed.norm2();
}

StepResult breed_step_dual_pm(const PureState& a, const PureState& b, double delta, Rng& rng,
                              double sampler_step) {
    const PureState mixed = mix_dual(a, b);
    const fock::MarginalDensity density(mixed, 2, Quadrature::X);
    StepResult r;
    r.acceptance = delta > 0.0 ? density.integral(-delta, delta) / mixed.norm2() : 0.0;
    if (!rng.bernoulli(r.acceptance)) {
        return r;
    }
    r.x = fock::sample_outcome(density, -delta, delta, rng, sampler_step);
    auto plus = fock::homodyne_project(mixed, 2, Quadrature::X, r.x);
    if (!(plus.density > 0.0)) {
        throw DegenerateState("dual-rail step: conditional state has zero norm");
    }
    fock::SamplerOptions opt;
    opt.step = sampler_step;
    auto minus = fock::homodyne_sample(plus.state.normalized(), 2, Quadrature::X, rng, opt);
    r.x_anti = minus.outcome;
    r.out = fock::trimmed(minus.state);
    r.accepted = true;
    return r;
}

StepResult breed_step_dual_pm_forced(const PureState& a, const PureState& b, double y_plus,
                                     double y_minus) {
    const PureState mixed = mix_dual(a, b);
    auto pm = fock::homodyne_project(mixed, 3, Quadrature::X, y_minus);
    auto pp = fock::homodyne_project(pm.state, 2, Quadrature::X, y_plus);
    StepResult r;
    r.x = y_plus;
    r.x_anti = y_minus;
    r.out = finish(pp);
    r.accepted = true;
    return r;
}

double time_with_memory(const std::vector<double>& level_probs) {
    double t = 1.0;
    for (double p : level_probs) {
        if (!(p > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        t = 1.5 * t / p;
    }
    return t;
}

double rate_without_memory(const std::vector<double>& level_probs) {
    const int m = static_cast<int>(level_probs.size());
    double log_rate = 0.0;
    for (int i = 0; i < m; ++i) {
        const double p = level_probs[static_cast<std::size_t>(i)];
        if (!(p > 0.0)) {
            return 0.0;
        }
        // Level i + 1 has 2^{m-1-i} nodes that must all succeed.
        log_rate += std::ldexp(1.0, m - 1 - i) * std::log(p);
    }
    return std::exp(log_rate);
}

double generation_rate(const std::vector<double>& level_probs, bool memory, RateModel model) {
    if (!memory) {
        return rate_without_memory(level_probs);
    }
    if (model == RateModel::Latency) {
        return 1.0 / time_with_memory(level_probs);
    }
    double rate = 1.0;
    for (double p : level_probs) {
        rate *= p;
    }
    return rate;
}

PureState forced_zero_state(int m) {
    PureState s = fock::fock_state({1}, {1});
    for (int level = 0; level < m; ++level) {
        s = breed_step_forced(s, s, 0.0).out;
    }
    return s;
}

GenStats run_generation(const BreedParams& params, std::uint64_t seed, unsigned workers) {
    if (params.m < 0) {
        throw InvalidArgument("run_generation: m must be non-negative");
    }
    if (params.trials < 1) {
        throw InvalidArgument("run_generation: trials must be at least 1");
    }
    if (params.delta < 0.0) {
        throw InvalidArgument("run_generation: delta must be non-negative");
    }
    if (params.contamination < 0.0 || params.contamination >= 1.0) {
        throw InvalidArgument("run_generation: contamination must lie in [0, 1)");
    }
    const std::size_t reps = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::max(1, params.replicates)), 1,
        std::max<std::size_t>(1, params.trials / 2));
    const std::size_t pop = std::max<std::size_t>(2, (params.trials + reps - 1) / reps);
    const PureState target = target_state(params.m, target_cutoff(params.m));

    std::vector<double> fid(reps);
    std::vector<double> rate(reps);
    std::vector<std::vector<double>> probs(reps, std::vector<double>(params.m, 0.0));

    for (std::size_t r = 0; r < reps; ++r) {
        std::vector<PureState> pool(pop);
        for (std::size_t k = 0; k < pop; ++k) {
            Rng rng(derive_seed(seed, {r, 0, k}));
            pool[k] = rng.bernoulli(params.contamination) ? fock::fock_state({2}, {2})
                                                          : fock::fock_state({1}, {1});
        }
        for (int level = 1; level <= params.m; ++level) {
            LevelStats stats;
            auto attempt = [&](const PureState& a, const PureState& b, Rng& rng) {
                Attempt<PureState> out;
                StepResult s = breed_step(a, b, params.delta, rng, params.sampler_step);
                out.probability = s.acceptance;
                if (s.accepted) {
                    out.out = std::move(s.out);
                }
                return out;
            };
            pool = breed_population(pool, pop, attempt, seed, r,
                                    static_cast<std::uint64_t>(level), workers, stats);
            probs[r][static_cast<std::size_t>(level - 1)] = stats.mean_probability();
        }
        std::vector<double> f(pop);
        parallel_for(pop, workers, [&](std::size_t k) { f[k] = fidelity_padded(pool[k], target); });
        fid[r] = mean_se(f).mean;
        rate[r] = generation_rate(probs[r], params.memory, params.rate_model);
    }

    GenStats out;
    const auto fs = mean_se(fid);
    const auto rs = mean_se(rate);
    out.mean_fidelity = fs.mean;
    out.fidelity_se = fs.se;
    out.rate = rs.mean;
    out.rate_se = rs.se;
    out.samples = reps * pop;
    out.level_success_probs.assign(static_cast<std::size_t>(params.m), 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
        for (int l = 0; l < params.m; ++l) {
            out.level_success_probs[static_cast<std::size_t>(l)] +=
                probs[r][static_cast<std::size_t>(l)] / static_cast<double>(reps);
        }
    }
    return out;
}

} // namespace catrep::breeding
