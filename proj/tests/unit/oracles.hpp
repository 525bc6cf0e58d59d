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

// Closed-form reference values used by the unit tests. Nothing here calls
// into the library.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// <n|alpha> = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
inline Complex coherent_amp(Complex alpha, int n) {
    if (n == 0) {
        return std::exp(-0.5 * std::norm(alpha));
    }
    return std::exp(-0.5 * std::norm(alpha) + static_cast<double>(n) * std::log(alpha) - 0.5 * std::lgamma(n + 1.0));
}

/// Physicists' Hermite polynomial by explicit formula for small n.
inline double hermite_poly(int n, double x) {
    switch (n) {
    case 0: return 1.0;
    case 1: return 2.0 * x;
    case 2: return 4.0 * x * x - 2.0;
    case 3: return 8.0 * x * x * x - 12.0 * x;
    case 4: return 16.0 * std::pow(x, 4) - 48.0 * x * x + 12.0;
    case 5: return 32.0 * std::pow(x, 5) - 160.0 * std::pow(x, 3) + 120.0 * x;
    default: return std::nan("");
    }
}

/// psi_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}, n <= 5.
inline double psi(int n, double x) {
    const double norm = std::sqrt(std::ldexp(1.0, n) * std::tgamma(n + 1.0) * std::sqrt(std::numbers::pi));
    return hermite_poly(n, x) * std::exp(-0.5 * x * x) / norm;
}

/// <x|alpha>.
inline Complex coherent_x(Complex alpha, double x) {
    return std::pow(std::numbers::pi, -0.25) *
           std::exp(-0.5 * x * x + std::sqrt(2.0) * alpha * x - 0.5 * alpha * alpha -
                    0.5 * std::norm(alpha));
}

/// <p|alpha>.
inline Complex coherent_p(Complex alpha, double p) {
    const Complex i(0.0, 1.0);
    return std::pow(std::numbers::pi, -0.25) *
           std::exp(-0.5 * p * p - i * std::sqrt(2.0) * alpha * p + 0.5 * alpha * alpha -
                    0.5 * std::norm(alpha));
}

/// <alpha|beta>.
inline Complex coherent_overlap(Complex a, Complex b) {
    return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

/// Composite Simpson rule on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    }
    return s * h / 3.0;
}

/// k_n from the closed form 2 sqrt2 coth(2^n a) with coth(a) = 1/sqrt2.
inline double k_closed(int n) {
    const Complex c0(1.0 / std::sqrt(2.0), 0.0);
    const Complex a = 0.5 * std::log((c0 + 1.0) / (c0 - 1.0));
    const Complex z = std::ldexp(1.0, n) * a;
    const Complex e = std::exp(-2.0 * z);
    return (2.0 * std::sqrt(2.0) * (1.0 + e) / (1.0 - e)).real();
}

} // namespace oracle
