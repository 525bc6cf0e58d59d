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

/// Heralded entanglement generation over one segment: two two-mode squeezed
/// sources, lossy photonic arms and single-photon detectors behind a central
/// beam splitter.
namespace catrep::entgen {

struct SourceParams {
    double p = 0.01;        // pair-production probability
    double eta_d = 0.5;     // detector efficiency
    double L0_km = 50.0;    // segment length
    double Latt_km = 20.0;  // fiber attenuation length
    double c_kms = 2e5;     // signal velocity in fiber
};

/// Per-arm fiber transmission exp(-(L0/2)/Latt).
double transmission(const SourceParams& params);

enum class Detection {
    Threshold,        // click / no click
    NumberResolving,  // exactly one photon
};

struct HeraldedOutcome {
    fock::BranchEnsemble state;  // memory modes (a, b), weights sum to one
    double p_succ = 0.0;         // either detector pattern
    double attempt_time_s = 0.0; // L0 / c
};

/// Smallest per-source truncation whose neglected weight p^{T+1} is below 1e-8.
int default_truncation(double p);

/// Post-click state of the two memories. Both single-click patterns are
/// accepted; the second differs by a (-1)^{n_b} phase on memory b and is
/// mapped onto the first. Throws InvalidArgument when p^{T+1} > 1e-8.
HeraldedOutcome heralded_state(const SourceParams& params, int truncation = 3,
                               Detection detection = Detection::Threshold);

/// Heralded-state weight outside the single-excitation subspace.
double multi_excitation_weight(const SourceParams& params, int truncation = 3,
                               Detection detection = Detection::Threshold);

} // namespace catrep::entgen
