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

#include "catrep/homodyne.hpp"

#include "catrep/error.hpp"
#include "detail.hpp"

#include <algorithm>
#include <cmath>

namespace catrep::fock {

std::vector<Complex> reduced_density(const PureState& s, int mode) {
    detail::check_mode(s, mode, "reduced_density");
    const auto split = detail::split_at(s.cutoffs(), mode);
    const auto d = static_cast<std::size_t>(s.cutoff(mode) + 1);
    const auto amps = s.amplitudes();
    std::vector<Complex> rho(d * d);
    for (std::size_t p = 0; p < split.pre; ++p) {
        for (std::size_t n = 0; n < d; ++n) {
            const Complex* rn = amps.data() + (p * d + n) * split.post;
            for (std::size_t m = 0; m <= n; ++m) {
                const Complex* rm = amps.data() + (p * d + m) * split.post;
                Complex acc{};
                for (std::size_t q = 0; q < split.post; ++q) {
                    acc += rn[q] * std::conj(rm[q]);
                }
                rho[n * d + m] += acc;
            }
        }
    }
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < n; ++m) {
            rho[m * d + n] = std::conj(rho[n * d + m]);
        }
    }
    return rho;
}

MarginalDensity::MarginalDensity(const PureState& s, int mode, Quadrature quad)
    : cutoff_(s.cutoff(mode)) {
    const auto rho = reduced_density(s, mode);
    const auto d = static_cast<std::size_t>(cutoff_ + 1);
    kernel_.assign(d * d, 0.0);
    static constexpr Complex phase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (std::size_t n = 0; n < d; ++n) {
        for (std::size_t m = 0; m < d; ++m) {
            Complex r = rho[n * d + m];
            if (quad == Quadrature::P) {
                // (-i)^(n-m) with n - m taken mod 4.
                r *= phase[(n + 4 * d - m) % 4];
            }
            kernel_[n * d + m] = r.real();
        }
    }
    scratch_.resize(d);
}

double MarginalDensity::operator()(double q) const {
    hermite_functions(q, scratch_);
    const auto d = scratch_.size();
    double sum = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        const double hn = scratch_[n];
        if (hn == 0.0) {
            continue;
        }
        const double* row = kernel_.data() + n * d;
        double acc = row[n] * hn;
        for (std::size_t m = 0; m < n; ++m) {
            acc += 2.0 * row[m] * scratch_[m];
        }
        sum += acc * hn;
    }
    return std::max(sum, 0.0);
}

double MarginalDensity::support_radius(double margin) const {
    return std::sqrt(2.0 * cutoff_ + 1.0) + margin;
}

double MarginalDensity::integral(double lo, double hi) const {
    const double r = support_radius();
    const double a = std::max(lo, -r);
    const double b = std::min(hi, r);
    if (!(b > a)) {
        return 0.0;
    }
    std::vector<double> nodes;
    std::vector<double> weights;
    composite_gauss_nodes(a, b, 0.25, nodes, weights);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        sum += weights[i] * (*this)(nodes[i]);
    }
    return sum;
}

double homodyne_density(const PureState& s, int mode, Quadrature quad, double value) {
    return MarginalDensity(s, mode, quad)(value);
}

Projection homodyne_project(const PureState& s, int mode, Quadrature quad, double value) {
    detail::check_mode(s, mode, "homodyne_project");
    const auto d = static_cast<std::size_t>(s.cutoff(mode) + 1);
    std::vector<Complex> k(d);
    quadrature_kernel(quad, value, k);
    std::vector<int> cut = s.cutoffs();
    cut.erase(cut.begin() + mode);
    Projection out{PureState(cut), 0.0};
    const auto split = detail::split_at(s.cutoffs(), mode);
    const auto src = s.amplitudes();
    auto dst = out.state.amplitudes();
    for (std::size_t p = 0; p < split.pre; ++p) {
        Complex* row = dst.data() + p * split.post;
        for (std::size_t n = 0; n < d; ++n) {
            const Complex kn = k[n];
            const Complex* in = src.data() + (p * d + n) * split.post;
            for (std::size_t q = 0; q < split.post; ++q) {
                row[q] += kn * in[q];
            }
        }
    }
    out.density = out.state.norm2();
    return out;
}

double window_probability(const PureState& s, int mode, Quadrature quad, double lo, double hi) {
    const double n2 = s.norm2();
    if (!(n2 > 0.0)) {
        throw DegenerateState("window_probability: zero-norm state");
    }
    return MarginalDensity(s, mode, quad).integral(lo, hi) / n2;
}

double sample_outcome(const MarginalDensity& density, double lo, double hi, Rng& rng,
                      double step) {
    const double r = density.support_radius();
    const double a = std::max(lo, -r);
    const double b = std::min(hi, r);
    if (!(b > a)) {
        throw DegenerateState("sample_outcome: empty window");
    }
    const auto cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / step)));
    const double h = (b - a) / static_cast<double>(cells);
    std::vector<double> f(cells + 1);
    for (std::size_t k = 0; k <= cells; ++k) {
        f[k] = density(a + h * static_cast<double>(k));
    }
    std::vector<double> cdf(cells + 1, 0.0);
    for (std::size_t k = 1; k <= cells; ++k) {
        cdf[k] = cdf[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
    }
    if (!(cdf.back() > 0.0)) {
        throw DegenerateState("sample_outcome: zero probability in window");
    }
    const double target = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    const std::size_t k = std::clamp<std::size_t>(
        static_cast<std::size_t>(it - cdf.begin()), 1, cells);
    const double mass = cdf[k] - cdf[k - 1];
    const double t = mass > 0.0 ? (target - cdf[k - 1]) / mass : 0.5;
    return a + h * (static_cast<double>(k - 1) + std::clamp(t, 0.0, 1.0));
}

Sample homodyne_sample(const PureState& s, int mode, Quadrature quad, Rng& rng,
                       const SamplerOptions& options) {
    detail::check_mode(s, mode, "homodyne_sample");
    if (!(s.norm2() > 0.0)) {
        throw DegenerateState("homodyne_sample: zero-norm state");
    }
    const MarginalDensity density(s, mode, quad);
    const double r = std::sqrt(2.0 * s.cutoff(mode) + 1.0) + options.margin;
    const double q = sample_outcome(density, -r, r, rng, options.step);
    auto proj = homodyne_project(s, mode, quad, q);
    if (!(proj.density > 0.0)) {
        throw DegenerateState("homodyne_sample: conditional state has zero norm");
    }
    return Sample{q, proj.state.normalized()};
}

} // namespace catrep::fock
