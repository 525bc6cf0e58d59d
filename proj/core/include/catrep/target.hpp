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

#include <vector>

/// Target states of the repeater and fidelities optimised over the phase phi
/// and two local momentum kicks.
namespace catrep::target {

/// Cat amplitude of the nested target after n connections of m-round states.
double final_amplitude(int m, int n);

/// Amplitude of the simplified local target, the n -> infinity limit of
/// final_amplitude.
double local_amplitude(int m);

/// S_+(4/k_n) S_-(k_n/2) |tmc(phi, final_amplitude(m, n))> on local modes (a, b).
fock::PureState final_target(int m, int n, double phi, int cutoff);

/// S_a(sqrt2) S_b(sqrt2) |tmc(phi, beta)> on local modes.
fock::PureState local_target(double beta, double phi, int cutoff);

/// The two branches T+ and T- of e^{i phi} T+ + e^{-i phi} T- for final_target.
struct Branches {
    fock::PureState plus;
    fock::PureState minus;
};
Branches final_target_branches(int m, int n, int cutoff);
Branches local_target_branches(double beta, int cutoff);

struct PhaseFit {
    double phi = 0.0;
    double fidelity = 0.0;
};

/// Maximises |e^{-i phi} u+ + e^{i phi} u-|^2 / N(phi) over phi, where
/// u+- = <T+-|psi> and N(phi) = n_pp + n_mm + 2 Re(e^{-2 i phi} n_pm).
PhaseFit best_phase(Complex u_plus, Complex u_minus, double n_pp, double n_mm, Complex n_pm,
                    double psi_norm2 = 1.0);

/// Fidelity of a two-mode state with e^{i phi}T+ + e^{-i phi}T- maximised over phi.
PhaseFit best_phase_fidelity(const fock::PureState& state, const Branches& branches);

struct Correction {
    double phi = 0.0;
    double kick_a = 0.0;  // momentum kicks e^{i k x} applied to the state
    double kick_b = 0.0;
    double fidelity = 0.0;
};

/// Best phi and local momentum kicks e^{i k_a x_a} e^{i k_b x_b} for the
/// fidelity of `state` with e^{i phi}T+ + e^{-i phi}T-, evaluated in the Fock
/// basis of the branches. Kicks start from values cancelling the mean momenta.
Correction optimize_correction(const fock::PureState& state, const Branches& branches);

/// Fidelity with S_a(s) S_b(s)|tmc(phi, beta)> evaluated on a position grid,
/// optimised over phi and local momentum kicks.
class GridFidelity {
  public:
    explicit GridFidelity(double beta, double squeeze = 1.4142135623730951, int points = 256,
                          double half_width = 10.0);

    /// Fidelity for given corrections (phi taken from the Correction).
    double evaluate(const fock::PureState& state, const Correction& c) const;

    /// Best phi and kicks, starting from kicks that cancel the mean momenta.
    Correction optimize(const fock::PureState& state) const;

  private:
    struct Wave;
    Wave wavefunction(const fock::PureState& state) const;
    PhaseFit phase_fit(const Wave& w, double ka, double kb) const;

    double beta_;
    double overlap_pm_;
    std::vector<double> x_;
    double dx_;
    std::vector<double> g_plus_;
    std::vector<double> g_minus_;
};

} // namespace catrep::target
