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

#include <vector>

namespace catrep::fock {

/// Reduced density matrix of one mode, rho[n * d + m] = sum_rest c_n c_m^*.
/// Not renormalised: its trace is the state's norm2.
std::vector<Complex> reduced_density(const PureState& s, int mode);

/// Homodyne marginal of one mode, precomputed for repeated evaluation.
/// density(q) = sum_nm Re(rho'_nm) psi_n(q) psi_m(q), which integrates to norm2.
class MarginalDensity {
  public:
    MarginalDensity(const PureState& s, int mode, Quadrature quad);

    double operator()(double q) const;
    int cutoff() const noexcept { return cutoff_; }
    /// Integral over [lo, hi].
    double integral(double lo, double hi) const;
    /// Half-width of the interval outside which the density is negligible.
    double support_radius(double margin = 8.0) const;

  private:
    int cutoff_;
    std::vector<double> kernel_;  // real symmetric (d x d)
    mutable std::vector<double> scratch_;
};

/// Probability density of outcome `value` when measuring `quad` on `mode`.
double homodyne_density(const PureState& s, int mode, Quadrature quad, double value);

struct Projection {
    PureState state;  // unnormalised conditional state, measured mode removed
    double density = 0.0;
};

/// Projects `mode` on the quadrature eigenstate <value|.
Projection homodyne_project(const PureState& s, int mode, Quadrature quad, double value);

/// Probability (relative to norm2) that the outcome falls in [lo, hi].
double window_probability(const PureState& s, int mode, Quadrature quad, double lo, double hi);

struct SamplerOptions {
    double step = 1e-3;   // grid spacing of the inverse-CDF table
    double margin = 8.0;  // grid spans +-(sqrt(2 cutoff + 1) + margin)
};

/// Draws an outcome from the marginal restricted to [lo, hi] by inverse CDF
/// on a uniform grid.
double sample_outcome(const MarginalDensity& density, double lo, double hi, Rng& rng,
                      double step = 1e-3);

struct Sample {
    double outcome = 0.0;
    PureState state;  // normalised conditional state
};

/// Full-line homodyne measurement: outcome drawn from the marginal and the
/// renormalised conditional state. Throws DegenerateState on a zero-norm input.
Sample homodyne_sample(const PureState& s, int mode, Quadrature quad, Rng& rng,
                       const SamplerOptions& options = {});

} // namespace catrep::fock
