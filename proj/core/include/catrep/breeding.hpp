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

#include "catrep/fock.hpp"
#include "catrep/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

/// Iterative generation of approximate squeezed cat states by pairwise
/// beam-splitter mixing and X-homodyne conditioning.
namespace catrep::breeding {

/// Unsqueezed amplitude sqrt(2^m + 1/2) of the cat approximated after m rounds.
double mu(int m);

/// Smallest cutoff accepted by ideal_psi: 2^m + 6 * 2^{m/2} + 10.
int ideal_cutoff(int m);

/// Fock rendering of Gamma(2^m + 1/2)^{-1/2} e^{-x^2/2} x^{2^m}.
fock::PureState ideal_psi(int m, int cutoff);

/// S(2)|cat(mu_m)>, normalised.
fock::PureState target_state(int m, int cutoff);

/// Cutoff used internally for target_state(m).
int target_cutoff(int m);

/// Fidelity of a single-mode state with a (possibly larger) reference state.
double fidelity_padded(const fock::PureState& state, const fock::PureState& reference);

struct StepResult {
    bool accepted = false;
    fock::PureState out;       // normalised on accept
    double x = 0.0;            // outcome (for dual rail: the symmetric outcome)
    double x_anti = 0.0;       // dual rail only: antisymmetric outcome
    double acceptance = 1.0;   // window probability of this pair
};

/// Single-mode step: mixes a and b, measures X on the difference port and keeps
/// the sum port. With `forced` set the outcome is fixed (always accepted).
StepResult breed_step(const fock::PureState& a, const fock::PureState& b, double delta,
                      Rng& rng, double sampler_step = 1e-3);
StepResult breed_step_forced(const fock::PureState& a, const fock::PureState& b, double x);

/// Window probability of the single-mode step for the pair (a, b).
double step_acceptance(const fock::PureState& a, const fock::PureState& b, double delta);

/// Two-mode local <-> symmetric/antisymmetric basis change (an involution).
fock::PureState to_pm(const fock::PureState& s);
fock::PureState from_pm(const fock::PureState& s);

/// Dual-rail step in the local basis: a and b hold modes (rail a, rail b).
/// Each rail is mixed with its partner and X is measured on the difference
/// ports with outcomes (ya, yb); the pair is kept when |ya + yb| / sqrt2 <= delta.
StepResult breed_step_dual_local_forced(const fock::PureState& a, const fock::PureState& b,
                                        double ya, double yb);

/// The same step expressed in the (+, -) basis, where it measures y+ with the
/// window and y- on the full line. Inputs and output are in the (+, -) basis.
StepResult breed_step_dual_pm(const fock::PureState& a, const fock::PureState& b, double delta,
                              Rng& rng, double sampler_step = 1e-3);
StepResult breed_step_dual_pm_forced(const fock::PureState& a, const fock::PureState& b,
                                     double y_plus, double y_minus);
double dual_step_acceptance(const fock::PureState& a_pm, const fock::PureState& b_pm,
                            double delta);

/// How level acceptance probabilities turn into a generation rate with memories.
enum class RateModel {
    Throughput,  // steady-state output of a buffered tree: prod_i P_i per period
    Latency,     // expected time to the first output: T_{i+1} = 1.5 T_i / P_i
};

struct BreedParams {
    int m = 3;
    double delta = 0.5;
    double contamination = 0.0;
    std::size_t trials = 10000;   // final states sampled
    bool memory = true;
    RateModel rate_model = RateModel::Throughput;
    int replicates = 16;          // independent populations for error bars
    double sampler_step = 1e-3;
};

struct GenStats {
    double mean_fidelity = 0.0;
    double fidelity_se = 0.0;
    std::vector<double> level_success_probs;  // levels 1..m
    double rate = 0.0;                        // per source repetition period
    double rate_se = 0.0;
    std::size_t samples = 0;
};

/// Expected generation time (in source periods) with memories: T_0 = 1,
/// T_{i+1} = 1.5 T_i / P_i.
double time_with_memory(const std::vector<double>& level_probs);

/// Rate without memories: every node of the tree must succeed in the same
/// period, prod_i P_i^{2^{m-1-i}}.
double rate_without_memory(const std::vector<double>& level_probs);

double generation_rate(const std::vector<double>& level_probs, bool memory,
                       RateModel model = RateModel::Throughput);

/// Monte Carlo of the full m-level tree. Each level is a population of
/// trials / replicates states; every output slot draws random pairs from the
/// previous level until one is accepted. Results depend only on the seed.
GenStats run_generation(const BreedParams& params, std::uint64_t seed, unsigned workers = 1);

/// Deterministic limit: outcomes forced to zero, pure |1> inputs.
fock::PureState forced_zero_state(int m);

} // namespace catrep::breeding
