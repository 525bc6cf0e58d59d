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
#include "catrep/optimize.hpp"
#include "catrep/repeater.hpp"
#include "catrep/rng.hpp"
#include "catrep/swapping.hpp"

#include "json.hpp"

#include <cmath>
#include <numbers>

namespace catrep::cli {

namespace {

using nlohmann::json;

breeding::BreedParams breed_params(const Config& c) {
    breeding::BreedParams p;
    p.m = c.get_int("breed.m");
    p.delta = c.get_double("breed.delta");
    p.contamination = c.get_double("breed.contamination");
    p.trials = static_cast<std::size_t>(c.get_int("trials"));
    p.memory = c.get_bool("breed.memory");
    p.rate_model = c.get_string("breed.rate_model") == "latency" ? breeding::RateModel::Latency
                                                                 : breeding::RateModel::Throughput;
    p.replicates = c.get_int("breed.replicates");
    p.sampler_step = c.get_double("breed.sampler_step");
    return p;
}

repeater::ProtocolParams protocol_base(const Config& c) {
    repeater::ProtocolParams p;
    p.source.eta_d = c.get_double("source.eta_d");
    p.source.Latt_km = c.get_double("source.Latt_km");
    p.source.c_kms = c.get_double("source.c_kms");
    p.detection = c.get_string("source.detection") == "number_resolving"
                      ? entgen::Detection::NumberResolving
                      : entgen::Detection::Threshold;
    p.trials = static_cast<std::size_t>(c.get_int("repeater.trials"));
    p.replicates = c.get_int("repeater.replicates");
    p.sampler_step = c.get_double("repeater.sampler_step");
    p.event_samples = static_cast<std::size_t>(c.get_int("repeater.event_samples"));
    return p;
}

std::string num(double v) {
    return format_double(v);
}

} // namespace

std::string fig2_csv(const Config& config) {
    const auto seed = config.get_u64("seed");
    const auto workers = static_cast<unsigned>(config.get_int("workers"));
    const auto ms = config.get_ints("fig2.m");
    const auto cs = config.get_doubles("fig2.contamination");
    const auto ds = config.get_doubles("fig2.delta");
    std::string out = "m,contamination,delta,fidelity,fidelity_se,rate,trials\n";
    for (std::size_t mi = 0; mi < ms.size(); ++mi) {
        for (std::size_t ci = 0; ci < cs.size(); ++ci) {
            for (std::size_t di = 0; di < ds.size(); ++di) {
                breeding::BreedParams p = breed_params(config);
                p.m = ms[mi];
                p.contamination = cs[ci];
                p.delta = ds[di];
                const auto s = breeding::run_generation(
                    p, derive_seed(seed, {static_cast<std::uint64_t>(p.m), ci, di}), workers);
                out += std::to_string(p.m) + "," + num(p.contamination) + "," + num(p.delta) + "," +
                       num(s.mean_fidelity) + "," + num(s.fidelity_se) + "," + num(s.rate) + "," +
                       std::to_string(s.samples) + "\n";
            }
        }
    }
    return out;
}

std::string fig3_csv(const Config& config) {
    const auto seed = config.get_u64("seed");
    const auto workers = static_cast<unsigned>(config.get_int("workers"));
    const auto distances = config.get_doubles("fig3.L_km");
    optimize::SearchParams sp;
    sp.F_target = config.get_double("fig3.F_target");
    sp.budget = config.get_int("fig3.budget");
    sp.n_values = config.get_ints("fig3.n");
    sp.m_values = config.get_ints("fig3.m");
    sp.p_start = config.get_double("fig3.p_start");
    sp.p_min = config.get_double("fig3.p_min");
    sp.p_max = config.get_double("fig3.p_max");
    sp.delta_gen_start = config.get_double("fig3.delta_gen_start");
    sp.delta_swap_start = config.get_double("fig3.delta_swap_start");
    sp.base = protocol_base(config);
    std::string out =
        "L_km,rate_per_min,n_opt,m_opt,p,delta_gen,delta_swap,fidelity,fidelity_se,feasible\n";
    for (std::size_t i = 0; i < distances.size(); ++i) {
        sp.L_km = distances[i];
        const auto r = optimize::optimize(sp, derive_seed(seed, {0xf3, i}), workers);
        const auto& b = r.best;
        const double delta_swap = b.params.n == 0 ? 0.0 : b.params.delta_swap;
        out += num(sp.L_km) + "," + num(r.feasible ? b.result.rate_per_min : 0.0) + "," +
               std::to_string(b.params.n) + "," + std::to_string(b.params.m) + "," +
               num(b.params.source.p) + "," + num(b.params.delta_gen) + "," + num(delta_swap) +
               "," + num(b.result.mean_fidelity) + "," + num(b.result.fidelity_se) + "," +
               (r.feasible ? "true" : "false") + "\n";
    }
    return out;
}

std::string breed_json(const Config& config) {
    const auto p = breed_params(config);
    const auto s = breeding::run_generation(p, config.get_u64("seed"),
                                            static_cast<unsigned>(config.get_int("workers")));
    json j;
    j["m"] = p.m;
    j["delta"] = p.delta;
    j["contamination"] = p.contamination;
    j["samples"] = s.samples;
    j["mean_fidelity"] = s.mean_fidelity;
    j["fidelity_se"] = s.fidelity_se;
    j["rate_per_period"] = s.rate;
    j["rate_se"] = s.rate_se;
    j["level_success_probs"] = s.level_success_probs;
    return j.dump(2) + "\n";
}

std::string swap_json(const Config& config) {
    const double alpha = config.get_double("swap.alpha");
    const int k = config.get_int("swap.k");
    const double delta = config.get_double("swap.delta") > 0.0 ? config.get_double("swap.delta")
                                                                : swapping::default_cut(alpha);
    const auto c = cat::cat_two(alpha, 0.0).normalized();
    json j;
    j["alpha"] = alpha;
    j["k"] = k;
    if (k == 0) {
        j["delta"] = delta;
        j["acceptance"] = swapping::swap_simple_acceptance_exact(c, c, delta);
        // Phase record for a few momentum outcomes.
        Rng rng(config.get_u64("seed"));
        json rows = json::array();
        for (int i = 0; i < 5; ++i) {
            const double p0 = 2.0 * rng.uniform() - 1.0;
            const auto r = swapping::swap_simple_exact(c, c, alpha, p0, 0.0);
            rows.push_back({{"p0", p0},
                            {"theta0", r.theta_phases.at(0)},
                            {"fitted_phase", swapping::relative_phase(r.out, alpha)}});
        }
        j["phase_record"] = rows;
    } else {
        const auto pre = swapping::swap_aux_state(c, c, k, alpha);
        const auto band = swapping::aux_accept_band(pre);
        j["band"] = {band.lo, band.hi};
        j["acceptance"] = swapping::swap_aux_acceptance(c, c, k, alpha);
        j["ideal_acceptance"] = 1.0 - std::ldexp(1.0, -k - 1);
    }
    return j.dump(2) + "\n";
}

std::string validation_json(const std::vector<CheckResult>& checks) {
    json arr = json::array();
    for (const auto& c : checks) {
        arr.push_back({{"check_id", c.check_id},
                       {"passed", c.passed},
                       {"measured", c.measured},
                       {"bound", c.bound}});
    }
    return arr.dump(2) + "\n";
}

} // namespace catrep::cli
