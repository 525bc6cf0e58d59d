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

#include "catrep/swapping.hpp"

#include "catrep/error.hpp"
#include "catrep/homodyne.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace catrep::swapping {

using fock::PureState;

double k_n(int n) {
    if (n < 0) {
        throw InvalidArgument("k_n: n must be non-negative");
    }
    double c = 1.0 / std::numbers::sqrt2;
    for (int j = 0; j < n; ++j) {
        c = (c * c + 1.0) / (2.0 * c);
    }
    return 2.0 * std::numbers::sqrt2 * c;
}

double default_cut(double alpha) {
    return std::abs(alpha);
}

// ---- Fock engine ---------------------------------------------------------------

PureState mixed_pair(const PureState& left, const PureState& right) {
    if (left.modes() != 2 || right.modes() != 2) {
        throw ShapeMismatch("swap: two-mode inputs expected");
    }
    const int d = left.cutoff(1) + right.cutoff(0);
    return fock::apply_beamsplitter(fock::tensor(left, right), 1, 2, d, d);
}

double swap_acceptance(const PureState& left, const PureState& right, double delta) {
    const PureState mixed = mixed_pair(left, right);
    return fock::MarginalDensity(mixed, 2, Quadrature::X).integral(-delta, delta) / mixed.norm2();
}

SwapResult swap_simple(const PureState& left, const PureState& right, double delta, Rng& rng,
                       double sampler_step) {
    const PureState mixed = mixed_pair(left, right);
    const fock::MarginalDensity xdens(mixed, 2, Quadrature::X);
    SwapResult r;
    r.acceptance = delta > 0.0 ? xdens.integral(-delta, delta) / mixed.norm2() : 0.0;
    if (!rng.bernoulli(r.acceptance)) {
        return r;
    }
    r.x_outcome = fock::sample_outcome(xdens, -delta, delta, rng, sampler_step);
    auto px = fock::homodyne_project(mixed, 2, Quadrature::X, r.x_outcome);
    if (!(px.density > 0.0)) {
        throw DegenerateState("swap_simple: conditional state has zero norm");
    }
    fock::SamplerOptions opt;
    opt.step = sampler_step;
    auto pp = fock::homodyne_sample(px.state.normalized(), 1, Quadrature::P, rng, opt);
    r.p_outcomes = {pp.outcome};
    r.out = fock::trimmed(pp.state);
    r.accepted = true;
    return r;
}

SwapResult swap_simple_forced(const PureState& left, const PureState& right, double p0, double x) {
    const PureState mixed = mixed_pair(left, right);
    auto px = fock::homodyne_project(mixed, 2, Quadrature::X, x);
    auto pp = fock::homodyne_project(px.state, 1, Quadrature::P, p0);
    if (!(pp.density > 0.0)) {
        throw DegenerateState("swap_simple_forced: conditional state has zero norm");
    }
    SwapResult r;
    r.accepted = true;
    r.x_outcome = x;
    r.p_outcomes = {p0};
    r.out = pp.state.normalized();
    return r;
}

// ---- analytic engine -------------------------------------------------------------

namespace {

// (A, B) x (B', C) -> (A, C, sum, diff).
cat::CoherentSum mixed_exact(const cat::CoherentSum& left, const cat::CoherentSum& right) {
    if (left.modes() != 2 || right.modes() != 2) {
        throw ShapeMismatch("swap: two-mode inputs expected");
    }
    auto s = cat::bs_map(cat::tensor(left, right), 1, 2);
    return cat::permuted(s, {0, 3, 1, 2});
}

} // namespace

ExactSwapResult swap_simple_exact(const cat::CoherentSum& left, const cat::CoherentSum& right,
                                  double alpha, double p0, double x) {
    const auto mixed = mixed_exact(left, right);
    auto px = cat::homodyne_project_exact(mixed, 3, Quadrature::X, x);
    auto pp = cat::homodyne_project_exact(px.state, 2, Quadrature::P, p0);
    if (!(pp.density > 0.0)) {
        throw DegenerateState("swap_simple_exact: conditional state has zero norm");
    }
    ExactSwapResult r;
    r.accepted = true;
    r.x_outcome = x;
    r.p_outcomes = {p0};
    r.theta_phases = {-2.0 * alpha * p0};
    r.out = cat::merged(pp.state).normalized();
    return r;
}

double swap_simple_acceptance_exact(const cat::CoherentSum& left, const cat::CoherentSum& right,
                                    double delta) {
    const auto mixed = mixed_exact(left, right);
    return cat::ExactMarginal(mixed, 3, Quadrature::X).integral(-delta, delta) / mixed.norm2();
}

cat::CoherentSum swap_aux_state(const cat::CoherentSum& left, const cat::CoherentSum& right,
                                int k, double alpha) {
    if (k < 0) {
        throw InvalidArgument("swap_aux_state: k must be non-negative");
    }
    auto s = mixed_exact(left, right);
    for (int j = 1; j <= k; ++j) {
        s = cat::tensor(s, cat::cat_single(std::pow(2.0, 0.5 * j) * alpha)
                               .normalized());
        const int cont = s.modes() - 2;
        const int aux = s.modes() - 1;
        // Continuing port -> sum (measured in P), auxiliary port -> difference.
        s = cat::bs_map(s, cont, aux);
    }
    return s;
}

std::vector<double> aux_peaks(const cat::CoherentSum& pre) {
    std::vector<double> peaks;
    const auto last = static_cast<std::size_t>(pre.modes() - 1);
    for (const auto& t : pre.terms()) {
        const double q = std::numbers::sqrt2 * t.amps[last].real();
        if (std::none_of(peaks.begin(), peaks.end(),
                         [&](double v) { return std::abs(v - q) < 1e-9; })) {
            peaks.push_back(q);
        }
    }
    std::sort(peaks.begin(), peaks.end());
    return peaks;
}

Band aux_accept_band(const cat::CoherentSum& pre) {
    const auto peaks = aux_peaks(pre);
    if (peaks.size() < 3) {
        throw DegenerateState("aux_accept_band: fewer than three X peaks");
    }
    const std::size_t n = peaks.size();
    return Band{0.5 * (peaks[0] + peaks[1]), 0.5 * (peaks[n - 2] + peaks[n - 1])};
}

double swap_aux_acceptance(const cat::CoherentSum& left, const cat::CoherentSum& right, int k,
                           double alpha) {
    const auto pre = swap_aux_state(left, right, k, alpha);
    const Band band = aux_accept_band(pre);
    return cat::ExactMarginal(pre, pre.modes() - 1, Quadrature::X).integral(band.lo, band.hi) /
           pre.norm2();
}

ExactSwapResult swap_aux(const cat::CoherentSum& left, const cat::CoherentSum& right, int k,
                         double alpha, const std::vector<double>& p_outcomes, double x) {
    if (static_cast<int>(p_outcomes.size()) != k + 1) {
        throw InvalidArgument("swap_aux: expected k + 1 P outcomes");
    }
    const auto pre = swap_aux_state(left, right, k, alpha);
    const Band band = aux_accept_band(pre);
    auto proj = cat::homodyne_project_exact(pre, pre.modes() - 1, Quadrature::X, x);
    cat::CoherentSum s = std::move(proj.state);
    ExactSwapResult r;
    // P ports sit at indices 2..k+2; project from the last one down.
    for (int j = k; j >= 0; --j) {
        s = cat::homodyne_project_exact(s, 2 + j, Quadrature::P,
                                        p_outcomes[static_cast<std::size_t>(j)])
                .state;
    }
    r.x_outcome = x;
    r.p_outcomes = p_outcomes;
    r.theta_phases.push_back(-2.0 * alpha * p_outcomes[0]);
    for (int j = 1; j <= k; ++j) {
        r.theta_phases.push_back(-std::pow(2.0, 0.5 * (j + 2)) * alpha *
                                 p_outcomes[static_cast<std::size_t>(j)]);
    }
    r.accepted = x > band.lo && x < band.hi;
    s = cat::pruned(cat::merged(s));
    if (s.norm2() > 0.0) {
        r.out = s.normalized();
    } else {
        r.out = s;
    }
    return r;
}

PureState swap_aux1_fock(const PureState& left, const PureState& right, double alpha, double p0,
                         double p1, double x) {
    PureState mixed = mixed_pair(left, right);
    // (A, sum, diff, C) -> (A, diff, C)
    PureState s = fock::homodyne_project(mixed, 1, Quadrature::P, p0).state;
    const double aux_amp = std::numbers::sqrt2 * alpha;
    const PureState aux = fock::cat_single(aux_amp, fock::cutoff_for_amplitude(aux_amp));
    s = fock::tensor(s, aux);  // (A, diff, C, aux)
    const int out = std::min(s.cutoff(1) + s.cutoff(3),
                             fock::cutoff_for_amplitude(2.0 * alpha) + 10);
    s = fock::apply_beamsplitter(s, 1, 3, out, out);  // (A, sum1, C, diff1)
    s = fock::homodyne_project(s, 1, Quadrature::P, p1).state;  // (A, C, diff1)
    return fock::homodyne_project(s, 2, Quadrature::X, x).state;
}

// ---- phase extraction --------------------------------------------------------

namespace {

constexpr std::array<std::array<double, 2>, 4> kSigns{{{1, 1}, {-1, -1}, {1, -1}, {-1, 1}}};

std::vector<Complex> solve(std::vector<Complex> a, std::vector<Complex> b, std::size_t n) {
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) {
                piv = r;
            }
        }
        if (std::abs(a[piv * n + c]) == 0.0) {
            throw DegenerateState("cat_coefficients: singular Gram matrix");
        }
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(a[c * n + k], a[piv * n + k]);
            }
            std::swap(b[c], b[piv]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const Complex f = a[r * n + c] / a[c * n + c];
            for (std::size_t k = c; k < n; ++k) {
                a[r * n + k] -= f * a[c * n + k];
            }
            b[r] -= f * b[c];
        }
    }
    std::vector<Complex> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) {
            s -= a[i * n + k] * x[k];
        }
        x[i] = s / a[i * n + i];
    }
    return x;
}

cat::CoherentSum basis_term(double alpha, std::size_t i) {
    cat::CoherentSum t(2);
    t.add(1.0, {kSigns[i][0] * alpha, kSigns[i][1] * alpha});
    return t;
}

std::vector<Complex> gram(double alpha) {
    std::vector<Complex> g(16);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            g[i * 4 + j] = cat::overlap(basis_term(alpha, i), basis_term(alpha, j));
        }
    }
    return g;
}

double phase_of(const std::vector<Complex>& c) {
    return 0.5 * std::arg(c[0] / c[1]);
}

} // namespace

std::vector<Complex> cat_coefficients(const PureState& state, double alpha) {
    if (state.modes() != 2) {
        throw ShapeMismatch("cat_coefficients: two-mode state expected");
    }
    std::vector<Complex> b(4);
    for (std::size_t i = 0; i < 4; ++i) {
        // Truncated but unnormalised coherent amplitudes, matching the exact Gram.
        PureState phi(state.cutoffs());
        auto amps = phi.amplitudes();
        const auto da = static_cast<std::size_t>(state.cutoff(0) + 1);
        const auto db = static_cast<std::size_t>(state.cutoff(1) + 1);
        std::vector<double> va(da);
        std::vector<double> vb(db);
        const double a0 = kSigns[i][0] * alpha;
        const double b0 = kSigns[i][1] * alpha;
        va[0] = std::exp(-0.5 * alpha * alpha);
        vb[0] = va[0];
        for (std::size_t n = 1; n < da; ++n) {
            va[n] = va[n - 1] * a0 / std::sqrt(static_cast<double>(n));
        }
        for (std::size_t n = 1; n < db; ++n) {
            vb[n] = vb[n - 1] * b0 / std::sqrt(static_cast<double>(n));
        }
        for (std::size_t p = 0; p < da; ++p) {
            for (std::size_t q = 0; q < db; ++q) {
                amps[p * db + q] = va[p] * vb[q];
            }
        }
        b[i] = fock::inner(phi, state);
    }
    return solve(gram(alpha), b, 4);
}

std::vector<Complex> cat_coefficients(const cat::CoherentSum& state, double alpha) {
    std::vector<Complex> b(4);
    for (std::size_t i = 0; i < 4; ++i) {
        b[i] = cat::overlap(basis_term(alpha, i), state);
    }
    return solve(gram(alpha), b, 4);
}

double relative_phase(const PureState& state, double alpha) {
    return phase_of(cat_coefficients(state, alpha));
}

double relative_phase(const cat::CoherentSum& state, double alpha) {
    return phase_of(cat_coefficients(state, alpha));
}

} // namespace catrep::swapping
