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

#include "catrep_cli/config.hpp"

#include <string>
#include <vector>

namespace catrep::cli {

/// Breeding fidelity/rate sweep over fig2.m x fig2.contamination x fig2.delta.
/// Columns: m, contamination, delta, fidelity, fidelity_se, rate, trials.
std::string fig2_csv(const Config& config);

/// Optimised rate per distance in fig3.L_km. Columns: L_km, rate_per_min,
/// n_opt, m_opt, p, delta_gen, delta_swap, fidelity, fidelity_se, feasible.
std::string fig3_csv(const Config& config);

/// One breeding run with the breed.* keys, as JSON.
std::string breed_json(const Config& config);

/// Acceptance and phase record of one swap of two cats with the swap.* keys,
/// as JSON.
std::string swap_json(const Config& config);

struct CheckResult {
    std::string check_id;
    bool passed = false;
    double measured = 0.0;
    double bound = 0.0;
};

/// Invariant suite behind `catrep validate`.
std::vector<CheckResult> run_validation(const Config& config);
std::string validation_json(const std::vector<CheckResult>& checks);

} // namespace catrep::cli
