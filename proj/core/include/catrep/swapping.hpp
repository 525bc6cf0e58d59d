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

#include "catrep/coherent_sum.hpp"
#include "catrep/fock.hpp"
#include "catrep/rng.hpp"

#include <vector>

/// Entanglement swapping of two-mode cat states with a balanced beam splitter
/// and homodyne detection, optionally with auxiliary single-mode cats.
///
/// Mode layout: left holds (A, B), right holds (B', C). B and B' are mixed;
/// P is measured on the sum port and X on the difference port.
namespace catrep::swapping {

/// k_n = 2 sqrt2 coth(2^n arccoth(1/sqrt2)) via c_{j+1} = (c_j^2 + 1) / (2 c_j),
/// c_0 = 1/sqrt2, k_n = 2 sqrt2 c_n.
double k_n(int n);

/// Default simple-swap cut: half the X spacing between the central and the
/// side peaks of the difference port, i.e. alpha.
double default_cut(double alpha);

struct SwapParams {
    double delta_swap = 0.0;  // <= 0 selects default_cut(alpha)
    int k = 0;                // auxiliary cats
    double alpha = 2.0;
};

struct SwapResult {
    bool accepted = false;
    fock::PureState out;           // modes (A, C), normalised on accept
    double x_outcome = 0.0;
    std::vector<double> p_outcomes;
    std::vector<double> theta_phases;
    double acceptance = 1.0;       // window probability for this input pair
};

struct ExactSwapResult {
    bool accepted = false;
    cat::CoherentSum out;          // modes (A, C), normalised on accept
    double x_outcome = 0.0;
    std::vector<double> p_outcomes;
    std::vector<double> theta_phases;
    double acceptance = 1.0;
};

// ---- Fock engine -----------------------------------------------------------

/// Joint state after the central beam splitter, modes (A, sum, diff, C).
fock::PureState mixed_pair(const fock::PureState& left, const fock::PureState& right);

/// Probability that |x| <= delta on the difference port.
double swap_acceptance(const fock::PureState& left, const fock::PureState& right, double delta);

/// Samples p on the full line and x within [-delta, delta] (after a Bernoulli
/// draw with the window probability).
SwapResult swap_simple(const fock::PureState& left, const fock::PureState& right, double delta,
                       Rng& rng, double sampler_step = 1e-3);

SwapResult swap_simple_forced(const fock::PureState& left, const fock::PureState& right,
                              double p0, double x);

// ---- analytic engine ---------------------------------------------------------

/// Projects on (p0, x); theta_phases holds theta_0 = -2 alpha p0.
ExactSwapResult swap_simple_exact(const cat::CoherentSum& left, const cat::CoherentSum& right,
                                  double alpha, double p0, double x);

/// Exact acceptance of |x| <= delta for the simple swap.
double swap_simple_acceptance_exact(const cat::CoherentSum& left, const cat::CoherentSum& right,
                                    double delta);

/// State before any measurement for k auxiliary cats of amplitude 2^{j/2} alpha.
/// Modes: (A, C, P-port 0, ..., P-port k, X-port).
cat::CoherentSum swap_aux_state(const cat::CoherentSum& left, const cat::CoherentSum& right,
                                int k, double alpha);

/// X positions of the peaks of the final difference port, sorted.
std::vector<double> aux_peaks(const cat::CoherentSum& pre);

/// Accepted X interval: all peaks except the two extremal ones, with band edges
/// at midpoints between neighbouring peaks.
struct Band {
    double lo = 0.0;
    double hi = 0.0;
};
Band aux_accept_band(const cat::CoherentSum& pre);

/// Probability that the final X outcome lands in the accepted band.
double swap_aux_acceptance(const cat::CoherentSum& left, const cat::CoherentSum& right, int k,
                           double alpha);

/// Forced-outcome auxiliary swap; p_outcomes has k + 1 entries.
/// theta_phases holds theta_0 = -2 alpha p_0 and theta_j = -2^{(j+2)/2} alpha p_j.
ExactSwapResult swap_aux(const cat::CoherentSum& left, const cat::CoherentSum& right, int k,
                         double alpha, const std::vector<double>& p_outcomes, double x);

/// Fock pipeline of the one-auxiliary swap with forced outcomes. The P ports
/// are projected as soon as they leave their beam splitter to keep the tensors
/// small. Returns the unnormalised (A, C) state.
fock::PureState swap_aux1_fock(const fock::PureState& left, const fock::PureState& right,
                               double alpha, double p0, double p1, double x);

// ---- phase extraction --------------------------------------------------------

/// Coefficients of state in the basis {|s1 alpha, s2 alpha>} with
/// (s1, s2) = (+,+), (-,-), (+,-), (-,+), from the exact Gram system.
std::vector<Complex> cat_coefficients(const fock::PureState& state, double alpha);
std::vector<Complex> cat_coefficients(const cat::CoherentSum& state, double alpha);

/// theta with state ~ e^{i theta}|alpha, alpha> + e^{-i theta}|-alpha, -alpha>.
double relative_phase(const fock::PureState& state, double alpha);
double relative_phase(const cat::CoherentSum& state, double alpha);

} // namespace catrep::swapping
