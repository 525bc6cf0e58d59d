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

#include "catrep/error.hpp"
#include "catrep/parallel.hpp"
#include "catrep/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace catrep {

/// Outcome of one pairing attempt: its acceptance probability and, when the
/// Bernoulli draw succeeded, the conditional output.
template <class State>
struct Attempt {
    double probability = 0.0;
    std::optional<State> out;
};

struct LevelStats {
    std::size_t attempts = 0;
    double probability_sum = 0.0;  // sum of per-attempt acceptance probabilities

    double mean_probability() const {
        return attempts == 0 ? 0.0 : probability_sum / static_cast<double>(attempts);
    }
};

/// Fills `count` output slots. Slot k draws pairs (i, j), i != j, uniformly
/// from `prev` and calls attempt(prev[i], prev[j], rng) until an output is
/// produced. The stream of slot k is seeded from (seed, labels..., k), so the
/// result does not depend on the number of workers.
template <class State, class Fn>
std::vector<State> breed_population(const std::vector<State>& prev, std::size_t count, Fn&& attempt,
                                    std::uint64_t seed, std::uint64_t label_a,
                                    std::uint64_t label_b, unsigned workers, LevelStats& stats,
                                    std::size_t max_attempts = 2'000'000) {
    if (prev.size() < 2) {
        throw InvalidArgument("breed_population: need at least two parent states");
    }
    std::vector<std::optional<State>> slots(count);
    std::vector<std::size_t> attempts(count, 0);
    std::vector<double> psum(count, 0.0);
    parallel_for(count, workers, [&](std::size_t k) {
        Rng rng(derive_seed(seed, {label_a, label_b, k}));
        for (std::size_t t = 0; t < max_attempts; ++t) {
            const std::size_t i = rng.index(prev.size());
            std::size_t j = rng.index(prev.size() - 1);
            if (j >= i) {
                ++j;
            }
            Attempt<State> r = attempt(prev[i], prev[j], rng);
            ++attempts[k];
            psum[k] += r.probability;
            if (r.out) {
                slots[k] = std::move(r.out);
                return;
            }
        }
        throw DegenerateState("breed_population: no accepted pair within the attempt budget");
    });
    std::vector<State> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        stats.attempts += attempts[k];
        stats.probability_sum += psum[k];
        out.push_back(std::move(*slots[k]));
    }
    return out;
}

} // namespace catrep
