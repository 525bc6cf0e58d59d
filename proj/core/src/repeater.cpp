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

#include "catrep/repeater.hpp"

#include "catrep/breeding.hpp"
#include "catrep/error.hpp"
#include "catrep/parallel.hpp"
#include "catrep/population.hpp"
#include "catrep/stats.hpp"
#include "catrep/swapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace catrep::repeater {

using fock::PureState;

namespace {

constexpr std::uint64_t kLeafLabel = 0;
constexpr std::uint64_t kBreedLabel = 100;
constexpr std::uint64_t kSwapLabel = 200;
constexpr int kTargetCutoff = 40;
constexpr double kEventLeafBudget = 2e7;

void check(const ProtocolParams& p) {
    if (!(p.L_km > 0.0)) {
        throw InvalidArgument("repeater: L_km must be positive");
    }
    if (p.n < 0 || p.n > 12) {
        throw InvalidArgument("repeater: n must lie in [0, 12]");
    }
    if (p.m < 0 || p.m > 4) {
        throw InvalidArgument("repeater: m must lie in [0, 4]");
    }
    if (!(p.delta_gen > 0.0)) {
        throw InvalidArgument("repeater: delta_gen must be positive");
    }
    if (p.trials < 2) {
        throw InvalidArgument("repeater: trials must be at least 2");
    }
    if (!(p.sampler_step > 0.0)) {
        throw InvalidArgument("repeater: sampler_step must be positive");
    }
}

double leaf_time(double attempt_time_s, double p_succ, Rng& rng) {
    if (p_succ >= 1.0) {
        return attempt_time_s;
    }
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double k = 1.0 + std::floor(std::log(u) / std::log1p(-p_succ));
    return k * attempt_time_s;
}

double node_time(int level, double attempt_time_s, double p_succ,
                 const std::vector<double>& probs, Rng& rng) {
    if (level == 0) {
        return leaf_time(attempt_time_s, p_succ, rng);
    }
    const double p = probs[static_cast<std::size_t>(level - 1)];
    double t = 0.0;
    for (;;) {
        const double a = node_time(level - 1, attempt_time_s, p_succ, probs, rng);
        const double b = node_time(level - 1, attempt_time_s, p_succ, probs, rng);
        t += std::max(a, b);
        if (rng.bernoulli(p)) {
            return t;
        }
    }
}

} // namespace

double default_swap_cut(int m) {
    // The B mode of the local target peaks at x = mu_m / sqrt2; the difference
    // port then has peaks at 0 and +-mu_m.
    return 0.5 * breeding::mu(m);
}

double segment_length(const ProtocolParams& p) {
    return p.L_km / std::ldexp(1.0, p.n);
}

double waiting_time(double attempt_time_s, double p_succ, const std::vector<double>& stage_probs) {
    if (!(p_succ > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    double t = attempt_time_s / p_succ;
    for (double p : stage_probs) {
        if (!(p > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        t = 1.5 * t / p;
    }
    return t;
}

double event_time(double attempt_time_s, double p_succ, const std::vector<double>& stage_probs,
                  std::size_t samples, std::uint64_t seed) {
    if (samples == 0) {
        return 0.0;
    }
    if (!(p_succ > 0.0) || std::any_of(stage_probs.begin(), stage_probs.end(),
                                       [](double p) { return !(p > 0.0); })) {
        return std::numeric_limits<double>::infinity();
    }
    // Expected leaf draws per sample; the sample count is cut to stay within
    // a fixed work budget.
    double leaves = 1.0;
    for (double p : stage_probs) {
        leaves *= 2.0 / p;
    }
    const double affordable = kEventLeafBudget / leaves;
    if (affordable < 10.0) {
        return 0.0;
    }
    samples = std::min(samples, static_cast<std::size_t>(affordable));
    const int levels = static_cast<int>(stage_probs.size());
    double total = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        Rng rng(derive_seed(seed, {0x7e, s}));
        total += node_time(levels, attempt_time_s, p_succ, stage_probs, rng);
    }
    return total / static_cast<double>(samples);
}

RepeaterResult simulate(const ProtocolParams& params, std::uint64_t seed, unsigned workers) {
    check(params);
    entgen::SourceParams src = params.source;
    src.L0_km = segment_length(params);
    const int trunc = params.truncation > 0 ? params.truncation
                                            : entgen::default_truncation(src.p);
    const entgen::HeraldedOutcome herald = entgen::heralded_state(src, trunc, params.detection);
    const double delta_swap =
        params.delta_swap > 0.0 ? params.delta_swap : default_swap_cut(params.m);

    const std::size_t reps = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::max(1, params.replicates)), 1,
        std::max<std::size_t>(1, params.trials / 2));
    const std::size_t pop = std::max<std::size_t>(2, (params.trials + reps - 1) / reps);
    const target::Branches branches =
        target::final_target_branches(params.m, params.n, kTargetCutoff);
    auto correct = [&](const PureState& s) {
        const int need = std::max(s.cutoff(0), s.cutoff(1));
        if (need <= kTargetCutoff) {
            return target::optimize_correction(s, branches);
        }
        return target::optimize_correction(
            s, target::final_target_branches(params.m, params.n, need + 10));
    };

    std::vector<double> fid(reps);
    std::vector<double> rate(reps);
    std::vector<std::vector<double>> breed_p(reps, std::vector<double>(params.m, 0.0));
    std::vector<std::vector<double>> swap_p(reps, std::vector<double>(params.n, 0.0));
    RepeaterResult out;
    out.corrections.reserve(reps * pop);

    for (std::size_t r = 0; r < reps; ++r) {
        // Leaves in the (+, -) basis.
        std::vector<PureState> pool(pop);
        parallel_for(pop, workers, [&](std::size_t k) {
            Rng rng(derive_seed(seed, {r, kLeafLabel, k}));
            const auto& branch = herald.state.branches()[herald.state.pick(rng.uniform())];
            pool[k] = breeding::to_pm(branch.state.normalized());
        });

        for (int level = 1; level <= params.m; ++level) {
            LevelStats stats;
            auto attempt = [&](const PureState& a, const PureState& b, Rng& rng) {
                Attempt<PureState> res;
                breeding::StepResult s =
                    breeding::breed_step_dual_pm(a, b, params.delta_gen, rng, params.sampler_step);
                res.probability = s.acceptance;
                if (s.accepted) {
                    res.out = fock::trimmed(s.out, params.trim_tol);
                }
                return res;
            };
            pool = breed_population(pool, pop, attempt, seed, r,
                                    kBreedLabel + static_cast<std::uint64_t>(level), workers,
                                    stats);
            breed_p[r][static_cast<std::size_t>(level - 1)] = stats.mean_probability();
        }
        parallel_for(pop, workers, [&](std::size_t k) {
            pool[k] = fock::trimmed(breeding::from_pm(pool[k]), params.trim_tol);
        });

        for (int level = 1; level <= params.n; ++level) {
            LevelStats stats;
            auto attempt = [&](const PureState& a, const PureState& b, Rng& rng) {
                Attempt<PureState> res;
                swapping::SwapResult s =
                    swapping::swap_simple(a, b, delta_swap, rng, params.sampler_step);
                res.probability = s.acceptance;
                if (s.accepted) {
                    res.out = fock::trimmed(s.out, params.trim_tol);
                }
                return res;
            };
            pool = breed_population(pool, pop, attempt, seed, r,
                                    kSwapLabel + static_cast<std::uint64_t>(level), workers,
                                    stats);
            swap_p[r][static_cast<std::size_t>(level - 1)] = stats.mean_probability();
        }

        std::vector<target::Correction> corr(pop);
        parallel_for(pop, workers, [&](std::size_t k) { corr[k] = correct(pool[k]); });
        std::vector<double> f(pop);
        for (std::size_t k = 0; k < pop; ++k) {
            f[k] = corr[k].fidelity;
            out.corrections.push_back(corr[k]);
        }
        fid[r] = mean_se(f).mean;

        std::vector<double> stages = breed_p[r];
        stages.insert(stages.end(), swap_p[r].begin(), swap_p[r].end());
        rate[r] = 60.0 / waiting_time(herald.attempt_time_s, herald.p_succ, stages);
    }

    const auto fs = mean_se(fid);
    const auto rs = mean_se(rate);
    out.mean_fidelity = fs.mean;
    out.fidelity_se = fs.se;
    out.rate_se_per_min = rs.se;
    out.p_succ = herald.p_succ;
    out.attempt_time_s = herald.attempt_time_s;
    out.samples = reps * pop;
    out.breed_probs.assign(static_cast<std::size_t>(params.m), 0.0);
    out.swap_probs.assign(static_cast<std::size_t>(params.n), 0.0);
    for (std::size_t r = 0; r < reps; ++r) {
        for (std::size_t l = 0; l < out.breed_probs.size(); ++l) {
            out.breed_probs[l] += breed_p[r][l] / static_cast<double>(reps);
        }
        for (std::size_t l = 0; l < out.swap_probs.size(); ++l) {
            out.swap_probs[l] += swap_p[r][l] / static_cast<double>(reps);
        }
    }
    std::vector<double> stages = out.breed_probs;
    stages.insert(stages.end(), out.swap_probs.begin(), out.swap_probs.end());
    out.latency_s = waiting_time(herald.attempt_time_s, herald.p_succ, stages);
    out.rate_per_s = 1.0 / out.latency_s;
    out.rate_per_min = 60.0 * out.rate_per_s;
    out.event_latency_s = event_time(herald.attempt_time_s, herald.p_succ, stages,
                                     params.event_samples, derive_seed(seed, {0xe7}));
    return out;
}

} // namespace catrep::repeater
