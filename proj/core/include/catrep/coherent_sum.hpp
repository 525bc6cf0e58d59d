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
#include "catrep/hermite.hpp"

#include <cstddef>
#include <vector>

/// Exact finite superpositions of multimode coherent states.
namespace catrep::cat {

struct Term {
    Complex coeff;
    std::vector<Complex> amps;  // one amplitude per mode
};

/// sum_k coeff_k |amps_k>. Terms are kept separate unless their amplitudes
/// coincide within 1e-12 (see merged()).
class CoherentSum {
  public:
    explicit CoherentSum(int modes = 0) : modes_(modes) {}

    void add(Complex coeff, std::vector<Complex> amps);

    int modes() const noexcept { return modes_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::vector<Term>& terms() noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Upper bound on the norm removed by pruning so far.
    double discarded_bound() const noexcept { return discarded_; }
    void add_discarded(double bound) noexcept { discarded_ += bound; }

    double norm2() const;
    CoherentSum normalized() const;
    CoherentSum& operator*=(Complex factor);

  private:
    int modes_;
    std::vector<Term> terms_;
    double discarded_ = 0.0;
};

/// <a|b> for single-mode coherent states.
Complex coherent_overlap(Complex a, Complex b);

/// <q|alpha> for the X or P quadrature.
Complex quadrature_amplitude(Quadrature quad, double q, Complex alpha);

/// Exact <a|b>; mode counts must agree.
Complex overlap(const CoherentSum& a, const CoherentSum& b);

/// Balanced beam splitter on modes (i, j): (a_i, a_j) -> ((a_i+a_j)/sqrt2, (a_i-a_j)/sqrt2).
CoherentSum bs_map(const CoherentSum& s, int i, int j);

/// Phase-space displacement of one mode by beta (global phases dropped per term
/// are kept: D(beta)|a> = e^{i Im(beta a^*)} |a + beta>).
CoherentSum displace(const CoherentSum& s, int i, Complex beta);

/// Phase rotation e^{i phi n} on one mode.
CoherentSum rotate(const CoherentSum& s, int i, double phi);

CoherentSum tensor(const CoherentSum& a, const CoherentSum& b);

/// Reorders modes: output mode k is input mode order[k].
CoherentSum permuted(const CoherentSum& s, const std::vector<int>& order);

/// Adds coefficients of terms whose amplitudes agree within tol.
CoherentSum merged(const CoherentSum& s, double tol = 1e-12);

/// Drops terms with |coeff| < rel_tol * max |coeff|, tracking the removed weight.
CoherentSum pruned(const CoherentSum& s, double rel_tol = 1e-15);

struct ExactProjection {
    CoherentSum state;  // unnormalised, measured mode removed
    double density = 0.0;
};

/// Projects mode i on <value| of the given quadrature.
ExactProjection homodyne_project_exact(const CoherentSum& s, int i, Quadrature quad, double value);

/// Marginal of one quadrature of one mode; integrates to norm2().
class ExactMarginal {
  public:
    ExactMarginal(const CoherentSum& s, int mode, Quadrature quad);

    double operator()(double q) const;
    double integral(double lo, double hi) const;
    /// Interval outside which the density is negligible.
    double support_lo() const noexcept { return lo_; }
    double support_hi() const noexcept { return hi_; }

  private:
    Quadrature quad_;
    std::vector<Complex> coeff_;  // c_k
    std::vector<Complex> amp_;    // measured-mode amplitude of term k
    std::vector<Complex> rest_;   // Gram of remaining modes, row-major
    double lo_ = 0.0;
    double hi_ = 0.0;
};

/// Fock rendering with the same cutoff on every mode. Throws
/// InsufficientCutoff when cutoff is below the rule for the largest amplitude.
fock::PureState to_fock(const CoherentSum& s, int cutoff);
fock::PureState to_fock(const CoherentSum& s, const std::vector<int>& cutoffs);

/// Unnormalised |alpha> + |-alpha>.
CoherentSum cat_single(double alpha);

/// Unnormalised e^{i theta}|alpha,alpha> + e^{-i theta}|-alpha,-alpha>.
CoherentSum cat_two(double alpha, double theta);

/// Largest |amplitude| over all terms and modes.
double max_amplitude(const CoherentSum& s);

} // namespace catrep::cat
