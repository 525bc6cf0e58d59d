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

#include "catrep/entgen.hpp"

#include "catrep/error.hpp"

#include <cmath>
#include <string>

namespace catrep::entgen {

namespace {

constexpr double kTruncationTol = 1e-8;

void check(const SourceParams& s) {
    if (!(s.p >= 0.0 && s.p < 1.0)) {
        throw InvalidArgument("entgen: p must lie in [0, 1)");
    }
    if (!(s.eta_d > 0.0 && s.eta_d <= 1.0)) {
        throw InvalidArgument("entgen: eta_d must lie in (0, 1]");
    }
    if (!(s.L0_km >= 0.0) || !(s.Latt_km > 0.0) || !(s.c_kms > 0.0)) {
        throw InvalidArgument("entgen: lengths and velocity must be positive");
    }
}

double binomial_amplitude(int n, int k, double eta) {
    // sqrt(C(n, k) eta^k (1 - eta)^{n - k})
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    double v = std::exp(0.5 * log_c);
    v *= std::pow(eta, 0.5 * k);
    v *= std::pow(1.0 - eta, 0.5 * (n - k));
    return v;
}

} // namespace

double transmission(const SourceParams& params) {
    return std::exp(-(0.5 * params.L0_km) / params.Latt_km);
}

int default_truncation(double p) {
    int t = 1;
    while (std::pow(p, t + 1) > kTruncationTol && t < 64) {
        ++t;
    }
    return t;
}

HeraldedOutcome heralded_state(const SourceParams& params, int truncation, Detection detection) {
    check(params);
    if (truncation < 1) {
        throw InvalidArgument("heralded_state: truncation must be at least 1");
    }
    if (std::pow(params.p, truncation + 1) > kTruncationTol * (1.0 + 1e-9)) {
        throw InvalidArgument("heralded_state: truncation " + std::to_string(truncation) +
                              " too small for p = " + std::to_string(params.p) +
                              " (neglected weight p^(T+1) exceeds 1e-8)");
    }
    const double eta = transmission(params) * params.eta_d;
    const int t = truncation;
    // Source amplitudes sqrt(1-p) p^{n/2}.
    std::vector<double> src(static_cast<std::size_t>(t) + 1);
    for (int n = 0; n <= t; ++n) {
        src[static_cast<std::size_t>(n)] = std::sqrt(1.0 - params.p) * std::pow(params.p, 0.5 * n);
    }

    HeraldedOutcome out;
    out.attempt_time_s = params.L0_km / params.c_kms;
    double p_pattern = 0.0;
    // Lost photon numbers (l1, l2) label orthogonal environment states; the
    // detector behind the sum port registers N photons and the other none.
    for (int l1 = 0; l1 <= t; ++l1) {
        for (int l2 = 0; l2 <= t; ++l2) {
            const int nmax = 2 * t - l1 - l2;
            const int nlo = 1;
            const int nhi = detection == Detection::NumberResolving ? 1 : nmax;
            for (int big_n = nlo; big_n <= nhi; ++big_n) {
                const auto& block = fock::beamsplitter_block(big_n);
                const auto d = static_cast<std::size_t>(big_n + 1);
                fock::PureState mem({t, t});
                bool any = false;
                for (int k1 = 0; k1 <= big_n; ++k1) {
                    const int k2 = big_n - k1;
                    const int n1 = l1 + k1;
                    const int n2 = l2 + k2;
                    if (n1 > t || n2 > t) {
                        continue;
                    }
                    const double amp = src[static_cast<std::size_t>(n1)] *
                                       src[static_cast<std::size_t>(n2)] *
                                       binomial_amplitude(n1, k1, eta) *
                                       binomial_amplitude(n2, k2, eta) *
                                       block[static_cast<std::size_t>(big_n) * d +
                                             static_cast<std::size_t>(k1)];
                    mem[{n1, n2}] = amp;
                    any = any || amp != 0.0;
                }
                if (!any) {
                    continue;
                }
                const double w = mem.norm2();
                p_pattern += w;
                out.state.add(1.0, mem);
            }
        }
    }
    if (!(p_pattern > 0.0)) {
        throw DegenerateState("heralded_state: zero success probability");
    }
    out.state.renormalize();
    out.p_succ = 2.0 * p_pattern;
    return out;
}

double multi_excitation_weight(const SourceParams& params, int truncation, Detection detection) {
    if (params.p == 0.0) {
        return 0.0;
    }
    const auto h = heralded_state(params, truncation, detection);
    double outside = 0.0;
    for (const auto& b : h.state.branches()) {
        const double single = std::norm(b.state[{0, 1}]) + std::norm(b.state[{1, 0}]);
        outside += b.weight * (1.0 - single);
    }
    return outside;
}

} // namespace catrep::entgen
