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
#include "catrep/coherent_sum.hpp"
#include "catrep/entgen.hpp"
#include "catrep/fock.hpp"
#include "catrep/repeater.hpp"
#include "catrep/rng.hpp"
#include "catrep/swapping.hpp"
#include "catrep/target.hpp"

#include <benchmark/benchmark.h>

using namespace catrep;

static void BM_BeamSplitter(benchmark::State& state) {
    const int cut = static_cast<int>(state.range(0));
    const auto s = fock::tensor(fock::coherent(1.0, cut), fock::coherent(Complex(0.3, 0.5), cut));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fock::apply_beamsplitter(s, 0, 1));
    }
}
BENCHMARK(BM_BeamSplitter)->Arg(20)->Arg(32)->Arg(64);

static void BM_Squeeze(benchmark::State& state) {
    const auto s = fock::coherent(1.5, 30);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fock::apply_squeeze(s, 0, 2.0, 60));
    }
}
BENCHMARK(BM_Squeeze);

static void BM_BreedStep(benchmark::State& state) {
    const auto psi = breeding::ideal_psi(2, breeding::ideal_cutoff(2));
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(breeding::breed_step(psi, psi, 0.5, rng));
    }
}
BENCHMARK(BM_BreedStep);

static void BM_HeraldedState(benchmark::State& state) {
    entgen::SourceParams s;
    s.p = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(entgen::heralded_state(s, entgen::default_truncation(s.p)));
    }
}
BENCHMARK(BM_HeraldedState);

static void BM_ExactSwap(benchmark::State& state) {
    const auto c = cat::cat_two(2.0, 0.0).normalized();
    for (auto _ : state) {
        benchmark::DoNotOptimize(swapping::swap_simple_exact(c, c, 2.0, 0.3, 0.1));
    }
}
BENCHMARK(BM_ExactSwap);

static void BM_OptimizeCorrection(benchmark::State& state) {
    const auto local = breeding::from_pm(fock::tensor(breeding::forced_zero_state(2), fock::vacuum(1, 0)));
    const auto br = target::final_target_branches(2, 0, 40);
    for (auto _ : state) {
        benchmark::DoNotOptimize(target::optimize_correction(local, br));
    }
}
BENCHMARK(BM_OptimizeCorrection)->Unit(benchmark::kMillisecond);

static void BM_Repeater(benchmark::State& state) {
    repeater::ProtocolParams p;
    p.L_km = 200.0;
    p.n = 1;
    p.m = 1;
    p.source.p = 1e-3;
    p.trials = 32;
    p.replicates = 2;
    p.event_samples = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(repeater::simulate(p, 1));
    }
}
BENCHMARK(BM_Repeater)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
