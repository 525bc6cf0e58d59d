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

#pragma once

#include "catrep/repeater.hpp"

#include <cstdint>
#include <string>
#include <vector>

/// Rate maximisation at fixed final fidelity over (n, m, p, delta_gen,
/// delta_swap).
namespace catrep::optimize {

struct SearchParams {
    double L_km = 1000.0;
    double F_target = 0.90;
    std::vector<int> n_values{0, 1, 2, 3, 4, 5};
    std::vector<int> m_values{1, 2, 3};
    int budget = 200;  // simulations per (n, m) cell
    // Starting point and box of the coordinate descent (log space).
    double p_start = 3e-3;
    double p_min = 1e-5;
    double p_max = 0.05;
    double delta_gen_start = 0.3;
    double delta_gen_min = 0.02;
    double delta_gen_max = 2.0;
    double delta_swap_start = 0.3;
    double delta_swap_min = 0.02;
    double delta_swap_max = 2.0;
    double initial_step = 1.0;  // ln-units
    double final_step = 0.05;
    repeater::ProtocolParams base;  // trials, source, sampler settings
};

struct Evaluation {
    repeater::ProtocolParams params;
    repeater::RepeaterResult result;
    bool feasible = false;  // fidelity - 2 se >= F_target
    bool failed = false;    // simulation error (treated as infeasible)
    std::string error;
};

struct CellResult {
    int n = 0;
    int m = 0;
    int evaluations = 0;
    bool feasible = false;
    Evaluation best;  // best feasible point, or the closest infeasible one
};

struct SearchResult {
    bool feasible = false;
    std::string status;  // "ok" or "infeasible under budget"
    Evaluation best;
    std::vector<CellResult> cells;
};

/// Whether a is preferred to b: feasible beats infeasible, then higher rate;
/// among infeasible points the larger fidelity - 2 se wins.
bool better(const Evaluation& a, const Evaluation& b);

/// Coordinate descent in (ln p, ln delta_gen, ln delta_swap) inside one cell.
/// All evaluations of the cell reuse one seed, so comparisons are made on
/// common random numbers.
CellResult optimize_cell(const SearchParams& params, int n, int m, std::uint64_t seed);

/// Searches every (n, m) cell; cells run in parallel on `workers` threads and
/// the result does not depend on the worker count.
SearchResult optimize(const SearchParams& params, std::uint64_t seed, unsigned workers = 1);

} // namespace catrep::optimize
