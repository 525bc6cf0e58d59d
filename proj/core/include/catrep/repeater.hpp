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

#include "catrep/entgen.hpp"
#include "catrep/fock.hpp"
#include "catrep/rng.hpp"
#include "catrep/target.hpp"

#include <cstdint>
#include <vector>

/// End-to-end repeater chain: heralded single-excitation pairs on 2^n
/// segments, m rounds of dual-rail breeding and n levels of swapping.
namespace catrep::repeater {

struct ProtocolParams {
    double L_km = 1000.0;
    int n = 4;                       // swap levels, 2^n segments
    int m = 2;                       // breeding rounds
    entgen::SourceParams source;     // L0_km is set to L_km / 2^n
    double delta_gen = 0.5;
    double delta_swap = 0.0;         // <= 0 selects default_swap_cut(m)
    std::size_t trials = 1000;
    int replicates = 8;
    double sampler_step = 1e-2;
    int truncation = 0;              // <= 0 selects entgen::default_truncation(p)
    entgen::Detection detection = entgen::Detection::Threshold;
    double trim_tol = 1e-10;         // photon-number tail dropped after each step
    std::size_t event_samples = 2000;  // event-level time samples (0 disables)
};

/// Half the spacing between the central and side X peaks of the swap
/// difference port for states close to the local target of round m.
double default_swap_cut(int m);

/// Segment length L / 2^n.
double segment_length(const ProtocolParams& p);

struct RepeaterResult {
    double rate_per_s = 0.0;
    double rate_per_min = 0.0;
    double rate_se_per_min = 0.0;
    double mean_fidelity = 0.0;
    double fidelity_se = 0.0;
    std::vector<double> breed_probs;   // levels 1..m
    std::vector<double> swap_probs;    // levels 1..n
    double p_succ = 0.0;
    double attempt_time_s = 0.0;
    double latency_s = 0.0;            // waiting-time model
    double event_latency_s = 0.0;      // event-level Monte Carlo (0 if disabled)
    std::size_t samples = 0;
    std::vector<target::Correction> corrections;  // one per final state
};

/// Expected time to one end-to-end pair: T_0 = attempt_time / p_succ, and
/// T <- 1.5 T / P at every breeding and swapping level.
double waiting_time(double attempt_time_s, double p_succ, const std::vector<double>& stage_probs);

/// Mean completion time of the binary tree with stage success probabilities
/// stage_probs, simulated event by event. Every node waits for both subtrees
/// and restarts both on failure; leaves succeed with probability p_succ per
/// attempt of duration attempt_time_s. The number of samples is reduced when
/// the expected work exceeds a fixed budget; returns 0 when even ten samples
/// are unaffordable.
double event_time(double attempt_time_s, double p_succ, const std::vector<double>& stage_probs,
                  std::size_t samples, std::uint64_t seed);

/// Population Monte Carlo of the chain. Deterministic for a given seed,
/// independent of the number of workers.
RepeaterResult simulate(const ProtocolParams& params, std::uint64_t seed, unsigned workers = 1);

} // namespace catrep::repeater
