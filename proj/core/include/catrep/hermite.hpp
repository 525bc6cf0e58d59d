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

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace catrep {

using Complex = std::complex<double>;

/// Normalised Hermite functions psi_n(x) = <x|n> for n = 0..out.size()-1,
/// with the vacuum psi_0(x) = pi^{-1/4} exp(-x^2/2). Uses the three-term
/// recurrence, which is stable for all n and x.
void hermite_functions(double x, std::span<double> out);

std::vector<double> hermite_functions(double x, int nmax);

/// Value of a single normalised Hermite function.
double hermite_function(int n, double x);

enum class Quadrature { X, P };

/// <q|n> for the requested quadrature: psi_n(q) for X, (-i)^n psi_n(q) for P.
void quadrature_kernel(Quadrature quad, double q, std::span<Complex> out);

/// Composite Gauss-Legendre integral of a smooth function over [a, b]
/// using panels no wider than `panel_width`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double panel_width = 0.25);

/// Nodes and weights of the composite rule used by integrate().
void composite_gauss_nodes(double a, double b, double panel_width,
                           std::vector<double>& nodes, std::vector<double>& weights);

} // namespace catrep
