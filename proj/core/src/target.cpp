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

#include "catrep/target.hpp"

#include "catrep/breeding.hpp"
#include "catrep/error.hpp"
#include "catrep/swapping.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace catrep::target {

using fock::PureState;

double final_amplitude(int m, int n) {
    return breeding::mu(m) / std::sqrt(swapping::k_n(n));
}

double local_amplitude(int m) {
    return breeding::mu(m) / std::pow(2.0, 0.75);
}

namespace {

PureState squeezed_coherent(double amp, double s, int cutoff) {
    const int work = std::max(cutoff, fock::cutoff_for_amplitude(amp));
    PureState c = fock::coherent(amp, work);
    c = fock::apply_squeeze(c, 0, s, work);
    return fock::embed(c, {cutoff}, 1e-8);
}

PureState combine(const Branches& b, double phi) {
    PureState out = b.plus;
    out *= std::polar(1.0, phi);
    auto dst = out.amplitudes();
    const auto src = b.minus.amplitudes();
    const Complex em = std::polar(1.0, -phi);
    for (std::size_t k = 0; k < dst.size(); ++k) {
        dst[k] += em * src[k];
    }
    return out.normalized();
}

} // namespace

Branches final_target_branches(int m, int n, int cutoff) {
    const double beta = final_amplitude(m, n);
    const double k = swapping::k_n(n);
    // |beta, beta> is |sqrt2 beta>_+ |0>_- in the (+, -) basis.
    const int work = 2 * cutoff;
    const PureState minus = squeezed_coherent(0.0, k / 2.0, work);
    Branches out;
    for (int sign : {1, -1}) {
        const PureState plus = squeezed_coherent(sign * std::numbers::sqrt2 * beta, 4.0 / k, work);
        PureState local = fock::apply_beamsplitter(fock::tensor(plus, minus), 0, 1, cutoff, cutoff);
        (sign > 0 ? out.plus : out.minus) = std::move(local);
    }
    return out;
}

Branches local_target_branches(double beta, int cutoff) {
    Branches out;
    const PureState p = squeezed_coherent(beta, std::numbers::sqrt2, cutoff);
    const PureState q = squeezed_coherent(-beta, std::numbers::sqrt2, cutoff);
    out.plus = fock::tensor(p, p);
    out.minus = fock::tensor(q, q);
    return out;
}

PureState final_target(int m, int n, double phi, int cutoff) {
    return combine(final_target_branches(m, n, cutoff), phi);
}

PureState local_target(double beta, double phi, int cutoff) {
    return combine(local_target_branches(beta, cutoff), phi);
}

PhaseFit best_phase(Complex u_plus, Complex u_minus, double n_pp, double n_mm, Complex n_pm,
                    double psi_norm2) {
    auto f = [&](double phi) {
        const Complex e = std::polar(1.0, phi);
        const double num = std::norm(std::conj(e) * u_plus + e * u_minus);
        const double den = n_pp + n_mm + 2.0 * std::real(std::conj(e * e) * n_pm);
        return num / (den * psi_norm2);
    };
    constexpr int kScan = 720;
    double best_phi = 0.0;
    double best = -1.0;
    for (int i = 0; i < kScan; ++i) {
        const double phi = std::numbers::pi * (static_cast<double>(i) / kScan - 0.5);
        const double v = f(phi);
        if (v > best) {
            best = v;
            best_phi = phi;
        }
    }
    // Golden-section refinement within one scan cell on either side.
    const double h = std::numbers::pi / kScan;
    double a = best_phi - h;
    double b = best_phi + h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 60; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double phi = 0.5 * (a + b);
    const double v = f(phi);
    return v >= best ? PhaseFit{phi, v} : PhaseFit{best_phi, best};
}

PhaseFit best_phase_fidelity(const PureState& state, const Branches& branches) {
    const PureState s = fock::embed(state, branches.plus.cutoffs(), 1e-8);
    return best_phase(fock::inner(branches.plus, s), fock::inner(branches.minus, s),
                      branches.plus.norm2(), branches.minus.norm2(),
                      fock::inner(branches.plus, branches.minus), s.norm2());
}

// ---- grid fidelity -------------------------------------------------------------

struct GridFidelity::Wave {
    std::vector<Complex> psi;  // psi[i * G + j] = <x_i, x_j|state>
    double norm2 = 0.0;
};

GridFidelity::GridFidelity(double beta, double squeeze, int points, double half_width)
    : beta_(beta) {
    if (points < 16 || !(half_width > 0.0) || !(squeeze > 0.0)) {
        throw InvalidArgument("GridFidelity: invalid grid");
    }
    const auto g = static_cast<std::size_t>(points);
    x_.resize(g);
    dx_ = 2.0 * half_width / static_cast<double>(points - 1);
    g_plus_.resize(g);
    g_minus_.resize(g);
    const double pre = std::pow(squeeze, 0.25) * std::pow(std::numbers::pi, -0.25);
    const double rs = std::sqrt(squeeze);
    const double shift = std::numbers::sqrt2 * beta;
    double ov = 0.0;
    for (std::size_t i = 0; i < g; ++i) {
        x_[i] = -half_width + dx_ * static_cast<double>(i);
        const double up = rs * x_[i] - shift;
        const double dn = rs * x_[i] + shift;
        g_plus_[i] = pre * std::exp(-0.5 * up * up);
        g_minus_[i] = pre * std::exp(-0.5 * dn * dn);
        ov += g_plus_[i] * g_minus_[i] * dx_;
    }
    overlap_pm_ = ov * ov;
}

GridFidelity::Wave GridFidelity::wavefunction(const PureState& state) const {
    if (state.modes() != 2) {
        throw ShapeMismatch("GridFidelity: two-mode state expected");
    }
    const std::size_t g = x_.size();
    const auto da = static_cast<std::size_t>(state.cutoff(0) + 1);
    const auto db = static_cast<std::size_t>(state.cutoff(1) + 1);
    std::vector<double> ha(g * da);
    std::vector<double> hb(g * db);
    for (std::size_t i = 0; i < g; ++i) {
        hermite_functions(x_[i], std::span<double>(ha.data() + i * da, da));
        hermite_functions(x_[i], std::span<double>(hb.data() + i * db, db));
    }
    const auto c = state.amplitudes();
    // tmp[n * G + j] = sum_m c[n, m] psi_m(x_j)
    std::vector<Complex> tmp(da * g);
    for (std::size_t n = 0; n < da; ++n) {
        for (std::size_t j = 0; j < g; ++j) {
            Complex acc{};
            const double* h = hb.data() + j * db;
            const Complex* row = c.data() + n * db;
            for (std::size_t m = 0; m < db; ++m) {
                acc += row[m] * h[m];
            }
            tmp[n * g + j] = acc;
        }
    }
    Wave w;
    w.psi.assign(g * g, Complex{});
    for (std::size_t i = 0; i < g; ++i) {
        Complex* out = w.psi.data() + i * g;
        const double* h = ha.data() + i * da;
        for (std::size_t n = 0; n < da; ++n) {
            const double hn = h[n];
            if (hn == 0.0) {
                continue;
            }
            const Complex* t = tmp.data() + n * g;
            for (std::size_t j = 0; j < g; ++j) {
                out[j] += hn * t[j];
            }
        }
    }
    double n2 = 0.0;
    for (const auto& v : w.psi) {
        n2 += std::norm(v);
    }
    w.norm2 = n2 * dx_ * dx_;
    return w;
}

PhaseFit GridFidelity::phase_fit(const Wave& w, double ka, double kb) const {
    const std::size_t g = x_.size();
    std::array<Complex, 2> u{};
    std::vector<Complex> eb(g);
    for (int branch = 0; branch < 2; ++branch) {
        const auto& gg = branch == 0 ? g_plus_ : g_minus_;
        for (std::size_t j = 0; j < g; ++j) {
            eb[j] = gg[j] * std::polar(1.0, kb * x_[j]);
        }
        Complex total{};
        for (std::size_t i = 0; i < g; ++i) {
            if (gg[i] < 1e-300) {
                continue;
            }
            const Complex* row = w.psi.data() + i * g;
            Complex acc{};
            for (std::size_t j = 0; j < g; ++j) {
                acc += row[j] * eb[j];
            }
            total += gg[i] * std::polar(1.0, ka * x_[i]) * acc;
        }
        u[static_cast<std::size_t>(branch)] = total * dx_ * dx_;
    }
    return best_phase(u[0], u[1], 1.0, 1.0, overlap_pm_, w.norm2);
}

double GridFidelity::evaluate(const PureState& state, const Correction& c) const {
    const Wave w = wavefunction(state);
    const std::size_t g = x_.size();
    Complex up{};
    Complex um{};
    for (std::size_t i = 0; i < g; ++i) {
        for (std::size_t j = 0; j < g; ++j) {
            const Complex v = w.psi[i * g + j] * std::polar(1.0, c.kick_a * x_[i] + c.kick_b * x_[j]);
            up += g_plus_[i] * g_plus_[j] * v;
            um += g_minus_[i] * g_minus_[j] * v;
        }
    }
    up *= dx_ * dx_;
    um *= dx_ * dx_;
    const Complex e = std::polar(1.0, c.phi);
    const double num = std::norm(std::conj(e) * up + e * um);
    const double den = 2.0 + 2.0 * std::cos(2.0 * c.phi) * overlap_pm_;
    return num / (den * w.norm2);
}

namespace {

// Nelder-Mead maximisation of score(ka, kb) from a given start.
template <class Score>
std::array<double, 2> descend(Score&& score, double ka0, double kb0) {
    std::array<std::array<double, 2>, 3> p{{{ka0, kb0}, {ka0 + 0.3, kb0}, {ka0, kb0 + 0.3}}};
    std::array<double, 3> f{};
    for (std::size_t i = 0; i < 3; ++i) {
        f[i] = -score(p[i][0], p[i][1]);
    }
    for (int it = 0; it < 120; ++it) {
        std::array<std::size_t, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return f[a] < f[b]; });
        const auto best = idx[0];
        const auto mid = idx[1];
        const auto worst = idx[2];
        if (std::abs(f[worst] - f[best]) < 1e-10 &&
            std::hypot(p[worst][0] - p[best][0], p[worst][1] - p[best][1]) < 1e-5) {
            break;
        }
        const std::array<double, 2> cen{0.5 * (p[best][0] + p[mid][0]),
                                        0.5 * (p[best][1] + p[mid][1])};
        auto at = [&](double t) {
            return std::array<double, 2>{cen[0] + t * (p[worst][0] - cen[0]),
                                         cen[1] + t * (p[worst][1] - cen[1])};
        };
        const auto r = at(-1.0);
        const double fr = -score(r[0], r[1]);
        if (fr < f[best]) {
            const auto e = at(-2.0);
            const double fe = -score(e[0], e[1]);
            if (fe < fr) {
                p[worst] = e;
                f[worst] = fe;
            } else {
                p[worst] = r;
                f[worst] = fr;
            }
        } else if (fr < f[mid]) {
            p[worst] = r;
            f[worst] = fr;
        } else {
            const auto ct = at(fr < f[worst] ? -0.5 : 0.5);
            const double fc = -score(ct[0], ct[1]);
            if (fc < std::min(fr, f[worst])) {
                p[worst] = ct;
                f[worst] = fc;
            } else {
                for (auto i : {mid, worst}) {
                    p[i] = {0.5 * (p[i][0] + p[best][0]), 0.5 * (p[i][1] + p[best][1])};
                    f[i] = -score(p[i][0], p[i][1]);
                }
            }
        }
    }
    const auto i = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
    return p[i];
}

template <class Score, class Fit>
Correction best_of_starts(const PureState& state, Score&& score, Fit&& fit) {
    const double pa = fock::quadrature_mean(state, 0, Quadrature::P);
    const double pb = fock::quadrature_mean(state, 1, Quadrature::P);
    Correction best;
    best.fidelity = -1.0;
    for (const auto& start : {std::array<double, 2>{-pa, -pb}, std::array<double, 2>{0.0, 0.0}}) {
        if (best.fidelity >= 0.0 && std::hypot(pa, pb) < 1e-6) {
            break;
        }
        const auto k = descend(score, start[0], start[1]);
        const PhaseFit f = fit(k[0], k[1]);
        if (f.fidelity > best.fidelity) {
            best = Correction{f.phi, k[0], k[1], f.fidelity};
        }
    }
    return best;
}

} // namespace

Correction GridFidelity::optimize(const PureState& state) const {
    const Wave w = wavefunction(state);
    auto score = [&](double ka, double kb) { return phase_fit(w, ka, kb).fidelity; };
    auto fit = [&](double ka, double kb) { return phase_fit(w, ka, kb); };
    return best_of_starts(state, score, fit);
}

Correction optimize_correction(const PureState& state, const Branches& branches) {
    // Overlaps only need the kicked state on the support of the branches, and
    // the displacement matrix elements are exact for any output cutoff.
    const PureState tp = fock::trimmed(branches.plus, 1e-13);
    const PureState tm = fock::trimmed(branches.minus, 1e-13);
    const std::vector<int> cut{std::max(tp.cutoff(0), tm.cutoff(0)),
                               std::max(tp.cutoff(1), tm.cutoff(1))};
    const PureState bp = fock::embed(branches.plus, cut, 1e-12);
    const PureState bm = fock::embed(branches.minus, cut, 1e-12);
    const PureState& s = state;
    const double norm2 = state.norm2();
    const double n_pp = branches.plus.norm2();
    const double n_mm = branches.minus.norm2();
    const Complex n_pm = fock::inner(branches.plus, branches.minus);
    auto fit = [&](double ka, double kb) {
        // Displacement D(i k / sqrt2) is the kick e^{i k x}; levels pushed past
        // the branch cutoff are dropped and lower the score.
        PureState k = fock::apply_displacement(s, 0, Complex(0.0, ka / std::numbers::sqrt2),
                                               cut[0], 1.0);
        k = fock::apply_displacement(k, 1, Complex(0.0, kb / std::numbers::sqrt2), cut[1], 1.0);
        return best_phase(fock::inner(bp, k), fock::inner(bm, k), n_pp, n_mm, n_pm, norm2);
    };
    auto score = [&](double ka, double kb) { return fit(ka, kb).fidelity; };
    return best_of_starts(state, score, fit);
}

} // namespace catrep::target
