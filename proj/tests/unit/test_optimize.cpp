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

#include "doctest.h"

using namespace catrep;

namespace {

optimize::Evaluation eval(bool feasible, double rate, double f, double se = 0.0) {
    optimize::Evaluation e;
    e.feasible = feasible;
    e.result.rate_per_s = rate;
    e.result.mean_fidelity = f;
    e.result.fidelity_se = se;
    return e;
}

optimize::SearchParams tiny() {
    optimize::SearchParams s;
    s.L_km = 100.0;
    s.n_values = {0, 1};
    s.m_values = {1};
    s.budget = 1;
    s.base.trials = 16;
    s.base.replicates = 2;
    s.base.event_samples = 0;
    return s;
}

} // namespace

TEST_CASE("ordering of evaluations") {
    CHECK(optimize::better(eval(true, 1.0, 0.9), eval(false, 5.0, 0.99)));
    CHECK(optimize::better(eval(true, 2.0, 0.9), eval(true, 1.0, 0.99)));
    CHECK_FALSE(optimize::better(eval(true, 1.0, 0.9), eval(true, 1.0, 0.9)));
    CHECK(optimize::better(eval(false, 0.0, 0.8, 0.01), eval(false, 9.0, 0.8, 0.05)));
    auto failed = eval(false, 0.0, 0.99);
    failed.failed = true;
    CHECK(optimize::better(eval(false, 0.0, 0.1), failed));
}

TEST_CASE("unreachable target is reported") {
    auto s = tiny();
    s.F_target = 1.0;
    const auto r = optimize::optimize(s, 4);
    CHECK_FALSE(r.feasible);
    CHECK(r.status == "infeasible under budget");
    CHECK(r.cells.size() == 2);
}

TEST_CASE("relaxing the target never lowers the rate") {
    auto s = tiny();
    double last = -1.0;
    for (double f : {0.99, 0.9, 0.7, 0.5}) {
        s.F_target = f;
        const auto r = optimize::optimize(s, 4);
        const double rate = r.feasible ? r.best.result.rate_per_s : 0.0;
        CHECK(rate >= last);
        last = rate;
    }
    CHECK(last > 0.0);
}

TEST_CASE("budget bounds the evaluations") {
    auto s = tiny();
    s.budget = 3;
    s.n_values = {1};
    const auto c = optimize::optimize_cell(s, 1, 1, 9);
    CHECK(c.evaluations <= 3);
    CHECK(c.best.params.n == 1);
}

TEST_CASE("cells are independent of the worker count") {
    const auto s = tiny();
    const auto a = optimize::optimize(s, 2, 1);
    const auto b = optimize::optimize(s, 2, 2);
    CHECK(a.best.result.mean_fidelity == b.best.result.mean_fidelity);
    CHECK(a.best.params.n == b.best.params.n);
}
