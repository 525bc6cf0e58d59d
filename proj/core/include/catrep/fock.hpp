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

#include "catrep/hermite.hpp"

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

/// Truncated Fock-space pure states of several bosonic modes and the
/// linear-optics operations used by the repeater.
///
/// Quadratures are x = (a + a^dag)/sqrt(2), p = (a - a^dag)/(i sqrt(2)), so the
/// vacuum has X-variance 1/2 and <x|alpha> = pi^{-1/4} exp(-x^2/2 + sqrt(2) alpha x
/// - alpha^2/2 - |alpha|^2/2).
namespace catrep::fock {

/// Relative norm loss tolerated when an operation truncates its output.
inline constexpr double kDefaultLeakTol = 1e-10;

/// Cutoff rule ceil(a^2 + 6a + 10) for the largest coherent amplitude a.
int cutoff_for_amplitude(double alpha_max);

/// Amplitude tensor over modes 0..modes()-1 (row-major, mode 0 slowest).
/// Every mode has its own cutoff (maximum photon number, inclusive). The
/// state may be unnormalised, e.g. a conditional branch after a projection.
class PureState {
  public:
    /// A zero-mode state holding the scalar 1.
    PureState();

    /// Zero amplitudes with the given per-mode cutoffs.
    explicit PureState(std::vector<int> cutoffs);

    PureState(std::vector<int> cutoffs, std::vector<Complex> amplitudes);

    int modes() const noexcept { return static_cast<int>(cutoffs_.size()); }
    int cutoff(int mode) const { return cutoffs_.at(static_cast<std::size_t>(mode)); }
    const std::vector<int>& cutoffs() const noexcept { return cutoffs_; }
    std::size_t size() const noexcept { return amps_.size(); }
    std::size_t stride(int mode) const { return strides_.at(static_cast<std::size_t>(mode)); }

    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> amplitudes() noexcept { return amps_; }

    Complex operator[](std::initializer_list<int> occupation) const;
    Complex& operator[](std::initializer_list<int> occupation);
    std::size_t offset(std::span<const int> occupation) const;

    double norm2() const;
    PureState normalized() const;
    PureState& operator*=(Complex factor);

    /// Photon-number distribution of one mode (not renormalised).
    std::vector<double> photon_distribution(int mode) const;
    /// <n> of one mode, relative to the state's norm.
    double mean_photon_number(int mode) const;
    /// Weight of the top Fock level of `mode`, relative to the norm.
    double top_level_weight(int mode) const;
    double max_top_level_weight() const;

    bool same_shape(const PureState& other) const noexcept { return cutoffs_ == other.cutoffs_; }

  private:
    void init_strides();

    std::vector<int> cutoffs_;
    std::vector<std::size_t> strides_;
    std::vector<Complex> amps_;
};

/// One incoherent branch: probability weight and a normalised pure state.
struct Branch {
    double weight = 0.0;
    PureState state;
};

/// Incoherent mixture represented by explicit pure branches. Weights are
/// non-negative and sum to at most one (sub-normalised after conditioning).
class BranchEnsemble {
  public:
    BranchEnsemble() = default;

    /// Adds a branch; an unnormalised state contributes weight * norm2.
    void add(double weight, const PureState& state);

    const std::vector<Branch>& branches() const noexcept { return branches_; }
    std::size_t size() const noexcept { return branches_.size(); }
    double total_weight() const;
    /// Rescales weights to sum to one.
    void renormalize();
    /// Throws if a weight is negative or the total exceeds 1 + 1e-12.
    void validate() const;

    /// Index of the branch selected by a uniform variate u in [0, 1), in
    /// proportion to the (renormalised) weights.
    std::size_t pick(double u) const;

  private:
    std::vector<Branch> branches_;
};

// ---- constructors --------------------------------------------------------

PureState vacuum(std::vector<int> cutoffs);
PureState vacuum(int modes, int cutoff);
PureState fock_state(std::vector<int> occupation, std::vector<int> cutoffs);

/// Normalised truncated coherent state |alpha>. Requires
/// cutoff >= cutoff_for_amplitude(|alpha|).
PureState coherent(Complex alpha, int cutoff);

/// Normalised |alpha> + |-alpha>.
PureState cat_single(double alpha, int cutoff);

/// Normalised e^{i theta}|alpha>|alpha> + e^{-i theta}|-alpha>|-alpha>.
PureState cat_two(double alpha, double theta, int cutoff);

// ---- structural helpers --------------------------------------------------

PureState tensor(const PureState& a, const PureState& b);

/// Copies into new cutoffs. Growing pads with zeros; shrinking drops the
/// excess levels and throws InsufficientCutoff if the dropped weight exceeds
/// `leak_tol` relative to the norm.
PureState embed(const PureState& s, const std::vector<int>& cutoffs,
                double leak_tol = kDefaultLeakTol);

/// Shrinks every cutoff to the smallest value whose discarded tail weight
/// stays below tol * norm2.
PureState trimmed(const PureState& s, double tol = 1e-14);

/// Reorders modes: output mode k is input mode order[k].
PureState permuted(const PureState& s, const std::vector<int>& order);

// ---- linear optics -------------------------------------------------------

/// Balanced beam splitter a_i^dag -> (a_i^dag + a_j^dag)/sqrt2,
/// a_j^dag -> (a_i^dag - a_j^dag)/sqrt2, so |a, b> -> |(a+b)/sqrt2, (a-b)/sqrt2>.
/// Mode i carries the sum, mode j the difference. Output cutoffs default to
/// the input ones; the map is exact when out_i, out_j >= cutoff(i) + cutoff(j).
PureState apply_beamsplitter(const PureState& s, int i, int j);
PureState apply_beamsplitter(const PureState& s, int i, int j, int out_cutoff_i,
                             int out_cutoff_j);

/// Squeezes the X-variance of mode i by the factor s: psi(x) -> s^{1/4} psi(sqrt(s) x).
/// Matrix elements are exact; output levels above out_cutoff are discarded and
/// InsufficientCutoff is thrown if that loses more than leak_tol of the norm.
PureState apply_squeeze(const PureState& state, int i, double s,
                        std::optional<int> out_cutoff = std::nullopt,
                        double leak_tol = kDefaultLeakTol);

/// Displacement D(beta) on mode i. D(i k/sqrt2) is the momentum kick e^{i k x}.
PureState apply_displacement(const PureState& state, int i, Complex beta,
                             std::optional<int> out_cutoff = std::nullopt,
                             double leak_tol = kDefaultLeakTol);

/// Phase rotation e^{i phi n} on mode i.
PureState apply_phase_rotation(const PureState& state, int i, double phi);

/// Fock-basis matrix <k|S(s)|n> for k <= out_cutoff, n <= in_cutoff, row-major.
std::vector<double> squeeze_matrix(double s, int in_cutoff, int out_cutoff);

/// Block of the balanced beam splitter with N total photons:
/// entry [k * (N+1) + n] = <k, N-k| U |n, N-n>.
const std::vector<double>& beamsplitter_block(int total);

/// Removes mode i by projecting it on |n>. The result is unnormalised.
PureState project_fock(const PureState& s, int i, int n);

// ---- overlaps ------------------------------------------------------------

/// <a|b>; shapes must match.
Complex inner(const PureState& a, const PureState& b);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double fidelity(const PureState& a, const PureState& b);

/// sum_k w_k |<a_k|b>|^2 with b normalised.
double fidelity(const BranchEnsemble& a, const PureState& b);

/// Wavefunction <q|psi> of a single-mode state.
Complex wavefunction(const PureState& s, Quadrature quad, double q);

/// Variance of the X (or P) quadrature of one mode.
double quadrature_variance(const PureState& s, int mode, Quadrature quad);

/// Mean of the X (or P) quadrature of one mode.
double quadrature_mean(const PureState& s, int mode, Quadrature quad);

/// JSON debug dump: {"modes", "cutoffs", "amplitudes": [[re, im], ...]}.
std::string to_json(const PureState& s);

} // namespace catrep::fock
