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

#include "catrep/optimize.hpp"

#include "catrep/error.hpp"
#include "catrep/parallel.hpp"
#include "catrep/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace catrep::optimize {

namespace {

double score(const Evaluation& e) {
    return e.result.mean_fidelity - 2.0 * e.result.fidelity_se;
}

void check(const SearchParams& p) {
    if (p.budget < 1) {
        throw InvalidArgument("optimize: budget must be at least 1");
    }
    if (p.n_values.empty() || p.m_values.empty()) {
        throw InvalidArgument("optimize: empty (n, m) grid");
    }
    if (!(p.F_target > 0.0 && p.F_target <= 1.0)) {
        throw InvalidArgument("optimize: F_target must lie in (0, 1]");
    }
    if (!(p.p_min > 0.0 && p.p_min <= p.p_max) || !(p.delta_gen_min > 0.0) ||
        !(p.delta_gen_min <= p.delta_gen_max) || !(p.delta_swap_min > 0.0) ||
        !(p.delta_swap_min <= p.delta_swap_max)) {
        throw InvalidArgument("optimize: invalid search box");
    }
    if (!(p.initial_step > 0.0) || !(p.final_step > 0.0)) {
        throw InvalidArgument("optimize: steps must be positive");
    }
}

} // namespace

bool better(const Evaluation& a, const Evaluation& b) {
    if (a.feasible != b.feasible) {
        return a.feasible;
    }
    if (a.feasible) {
        return a.result.rate_per_s > b.result.rate_per_s;
    }
    if (a.failed != b.failed) {
        return b.failed;
    }
    return score(a) > score(b);
}

CellResult optimize_cell(const SearchParams& params, int n, int m, std::uint64_t seed) {
    check(params);
    const std::array<double, 3> lo{std::log(params.p_min), std::log(params.delta_gen_min),
                                   std::log(params.delta_swap_min)};
    const std::array<double, 3> hi{std::log(params.p_max), std::log(params.delta_gen_max),
                                   std::log(params.delta_swap_max)};
    std::array<double, 3> x{std::log(params.p_start), std::log(params.delta_gen_start),
                            std::log(params.delta_swap_start)};
    for (std::size_t c = 0; c < 3; ++c) {
        x[c] = std::clamp(x[c], lo[c], hi[c]);
    }

    CellResult cell;
    cell.n = n;
    cell.m = m;
    auto evaluate = [&](const std::array<double, 3>& v) {
        Evaluation e;
        e.params = params.base;
        e.params.L_km = params.L_km;
        e.params.n = n;
        e.params.m = m;
        e.params.source.p = std::exp(v[0]);
        e.params.delta_gen = std::exp(v[1]);
        e.params.delta_swap = std::exp(v[2]);
        ++cell.evaluations;
        try {
            e.result = repeater::simulate(e.params, seed, 1);
            e.feasible = score(e) >= params.F_target && e.result.rate_per_s > 0.0;
        } catch (const Error& err) {
            e.failed = true;
            e.error = err.what();
        }
        return e;
    };

    Evaluation best = evaluate(x);
    // delta_swap is inert without swaps.
    const std::size_t coords = n == 0 ? 2 : 3;
    double step = params.initial_step;
    while (step >= params.final_step && cell.evaluations < params.budget) {
        bool moved = false;
        for (std::size_t c = 0; c < coords && !moved; ++c) {
            for (double dir : {1.0, -1.0}) {
                if (cell.evaluations >= params.budget) {
                    break;
                }
                std::array<double, 3> y = x;
                y[c] = std::clamp(y[c] + dir * step, lo[c], hi[c]);
                if (y[c] == x[c]) {
                    continue;
                }
                Evaluation e = evaluate(y);
                if (better(e, best)) {
                    best = std::move(e);
                    x = y;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) {
            step *= 0.5;
        }
    }
    cell.feasible = best.feasible;
    cell.best = std::move(best);
    return cell;
}

SearchResult optimize(const SearchParams& params, std::uint64_t seed, unsigned workers) {
    check(params);
    std::vector<std::pair<int, int>> grid;
    for (int n : params.n_values) {
        for (int m : params.m_values) {
            grid.emplace_back(n, m);
        }
    }
    SearchResult out;
    out.cells.resize(grid.size());
    parallel_for(grid.size(), workers, [&](std::size_t i) {
        const auto [n, m] = grid[i];
        out.cells[i] = optimize_cell(params, n, m,
                                     derive_seed(seed, {static_cast<std::uint64_t>(n),
                                                        static_cast<std::uint64_t>(m)}));
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < out.cells.size(); ++i) {
        if (better(out.cells[i].best, out.cells[best].best)) {
            best = i;
        }
    }
    out.best = out.cells[best].best;
    out.feasible = out.best.feasible;
    out.status = out.feasible ? "ok" : "infeasible under budget";
    return out;
}

} // namespace catrep::optimize
