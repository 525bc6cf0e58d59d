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

#include "catrep/hermite.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>

namespace catrep {

void hermite_functions(double x, std::span<double> out) {
    if (out.empty()) {
        return;
    }
    const double pi_m14 = std::pow(std::numbers::pi, -0.25);
    out[0] = pi_m14 * std::exp(-0.5 * x * x);
    if (out.size() == 1) {
        return;
    }
    out[1] = std::sqrt(2.0) * x * out[0];
    for (std::size_t n = 1; n + 1 < out.size(); ++n) {
        const double dn = static_cast<double>(n);
        out[n + 1] = std::sqrt(2.0 / (dn + 1.0)) * x * out[n] - std::sqrt(dn / (dn + 1.0)) * out[n - 1];
    }
}

std::vector<double> hermite_functions(double x, int nmax) {
    std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
    hermite_functions(x, out);
    return out;
}

double hermite_function(int n, double x) {
    return hermite_functions(x, n).back();
}

void quadrature_kernel(Quadrature quad, double q, std::span<Complex> out) {
    std::vector<double> h(out.size());
    hermite_functions(q, h);
    if (quad == Quadrature::X) {
        for (std::size_t n = 0; n < out.size(); ++n) {
            out[n] = h[n];
        }
        return;
    }
    // (-i)^n cycles through 1, -i, -1, i.
    static constexpr Complex phase[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = phase[n % 4] * h[n];
    }
}

void composite_gauss_nodes(double a, double b, double panel_width,
                           std::vector<double>& nodes, std::vector<double>& weights) {
    using Rule = boost::math::quadrature::gauss<double, 20>;
    nodes.clear();
    weights.clear();
    if (!(b > a)) {
        return;
    }
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width)));
    const double h = (b - a) / panels;
    const auto& abscissa = Rule::abscissa();
    const auto& weight = Rule::weights();
    for (int k = 0; k < panels; ++k) {
        const double mid = a + (k + 0.5) * h;
        const double half = 0.5 * h;
        // Boost stores the non-negative half of the symmetric rule.
        for (std::size_t i = 0; i < abscissa.size(); ++i) {
            if (abscissa[i] == 0.0) {
                nodes.push_back(mid);
                weights.push_back(half * weight[i]);
            } else {
                nodes.push_back(mid - half * abscissa[i]);
                weights.push_back(half * weight[i]);
                nodes.push_back(mid + half * abscissa[i]);
                weights.push_back(half * weight[i]);
            }
        }
    }
}

double integrate(const std::function<double(double)>& f, double a, double b, double panel_width) {
    std::vector<double> nodes;
    std::vector<double> weights;
    composite_gauss_nodes(a, b, panel_width, nodes, weights);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        sum += weights[i] * f(nodes[i]);
    }
    return sum;
}

} // namespace catrep
