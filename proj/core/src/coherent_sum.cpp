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

#include "catrep/coherent_sum.hpp"

#include "catrep/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace catrep::cat {

namespace {

void check_mode(const CoherentSum& s, int mode, const char* what) {
    if (mode < 0 || mode >= s.modes()) {
        throw InvalidArgument(std::string(what) + ": mode " + std::to_string(mode) +
                              " out of range");
    }
}

// log <a|b>
Complex log_overlap(Complex a, Complex b) {
    return -0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b;
}

// log(pi^{1/4} <q|alpha>)
Complex log_quadrature(Quadrature quad, double q, Complex alpha) {
    const double s2 = std::numbers::sqrt2;
    if (quad == Quadrature::X) {
        return -0.5 * q * q + s2 * alpha * q - 0.5 * alpha * alpha - 0.5 * std::norm(alpha);
    }
    return -0.5 * q * q - Complex{0.0, s2} * alpha * q + 0.5 * alpha * alpha -
           0.5 * std::norm(alpha);
}

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);

} // namespace

void CoherentSum::add(Complex coeff, std::vector<Complex> amps) {
    if (static_cast<int>(amps.size()) != modes_) {
        throw ShapeMismatch("CoherentSum::add: amplitude count does not match mode count");
    }
    terms_.push_back(Term{coeff, std::move(amps)});
}

double CoherentSum::norm2() const {
    return overlap(*this, *this).real();
}

CoherentSum CoherentSum::normalized() const {
    const double n2 = norm2();
    if (!(n2 > 0.0)) {
        throw DegenerateState("CoherentSum: cannot normalise a zero-norm state");
    }
    CoherentSum out = *this;
    out *= 1.0 / std::sqrt(n2);
    return out;
}

CoherentSum& CoherentSum::operator*=(Complex factor) {
    for (auto& t : terms_) {
        t.coeff *= factor;
    }
    return *this;
}

Complex coherent_overlap(Complex a, Complex b) {
    return std::exp(log_overlap(a, b));
}

Complex quadrature_amplitude(Quadrature quad, double q, Complex alpha) {
    return kPiQuarter * std::exp(log_quadrature(quad, q, alpha));
}

Complex overlap(const CoherentSum& a, const CoherentSum& b) {
    if (a.modes() != b.modes()) {
        throw ShapeMismatch("overlap: mode counts differ");
    }
    Complex sum{};
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            Complex e{};
            for (std::size_t k = 0; k < ta.amps.size(); ++k) {
                e += log_overlap(ta.amps[k], tb.amps[k]);
            }
            sum += std::conj(ta.coeff) * tb.coeff * std::exp(e);
        }
    }
    return sum;
}

CoherentSum bs_map(const CoherentSum& s, int i, int j) {
    check_mode(s, i, "bs_map");
    check_mode(s, j, "bs_map");
    if (i == j) {
        throw InvalidArgument("bs_map: modes must differ");
    }
    CoherentSum out = s;
    const double r = 1.0 / std::numbers::sqrt2;
    for (auto& t : out.terms()) {
        const Complex a = t.amps[static_cast<std::size_t>(i)];
        const Complex b = t.amps[static_cast<std::size_t>(j)];
        t.amps[static_cast<std::size_t>(i)] = r * (a + b);
        t.amps[static_cast<std::size_t>(j)] = r * (a - b);
    }
    return out;
}

CoherentSum displace(const CoherentSum& s, int i, Complex beta) {
    check_mode(s, i, "displace");
    CoherentSum out = s;
    for (auto& t : out.terms()) {
        Complex& a = t.amps[static_cast<std::size_t>(i)];
        t.coeff *= std::polar(1.0, std::imag(beta * std::conj(a)));
        a += beta;
    }
    return out;
}

CoherentSum rotate(const CoherentSum& s, int i, double phi) {
    check_mode(s, i, "rotate");
    CoherentSum out = s;
    const Complex ph = std::polar(1.0, phi);
    for (auto& t : out.terms()) {
        t.amps[static_cast<std::size_t>(i)] *= ph;
    }
    return out;
}

CoherentSum tensor(const CoherentSum& a, const CoherentSum& b) {
    CoherentSum out(a.modes() + b.modes());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            std::vector<Complex> amps = ta.amps;
            amps.insert(amps.end(), tb.amps.begin(), tb.amps.end());
            out.add(ta.coeff * tb.coeff, std::move(amps));
        }
    }
    out.add_discarded(a.discarded_bound() + b.discarded_bound());
    return out;
}

CoherentSum permuted(const CoherentSum& s, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != s.modes()) {
        throw ShapeMismatch("permuted: order has wrong length");
    }
    CoherentSum out(s.modes());
    for (const auto& t : s.terms()) {
        std::vector<Complex> amps(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            check_mode(s, order[k], "permuted");
            amps[k] = t.amps[static_cast<std::size_t>(order[k])];
        }
        out.add(t.coeff, std::move(amps));
    }
    out.add_discarded(s.discarded_bound());
    return out;
}

CoherentSum merged(const CoherentSum& s, double tol) {
    CoherentSum out(s.modes());
    for (const auto& t : s.terms()) {
        auto& terms = out.terms();
        auto same = std::find_if(terms.begin(), terms.end(), [&](const Term& u) {
            for (std::size_t k = 0; k < t.amps.size(); ++k) {
                if (std::abs(u.amps[k] - t.amps[k]) > tol) {
                    return false;
                }
            }
            return true;
        });
        if (same != terms.end()) {
            same->coeff += t.coeff;
        } else {
            out.add(t.coeff, t.amps);
        }
    }
    out.add_discarded(s.discarded_bound());
    return out;
}

CoherentSum pruned(const CoherentSum& s, double rel_tol) {
    double cmax = 0.0;
    for (const auto& t : s.terms()) {
        cmax = std::max(cmax, std::abs(t.coeff));
    }
    CoherentSum out(s.modes());
    double dropped = 0.0;
    for (const auto& t : s.terms()) {
        if (std::abs(t.coeff) < rel_tol * cmax) {
            dropped += std::abs(t.coeff);
        } else {
            out.add(t.coeff, t.amps);
        }
    }
    // Triangle inequality: the dropped vector has norm at most sum |c_k|.
    out.add_discarded(s.discarded_bound() + dropped);
    return out;
}

ExactProjection homodyne_project_exact(const CoherentSum& s, int i, Quadrature quad,
                                       double value) {
    check_mode(s, i, "homodyne_project_exact");
    CoherentSum out(s.modes() - 1);
    for (const auto& t : s.terms()) {
        std::vector<Complex> amps = t.amps;
        const Complex a = amps[static_cast<std::size_t>(i)];
        amps.erase(amps.begin() + i);
        out.add(t.coeff * quadrature_amplitude(quad, value, a), std::move(amps));
    }
    out.add_discarded(s.discarded_bound());
    const double density = out.norm2();
    return ExactProjection{std::move(out), density};
}

ExactMarginal::ExactMarginal(const CoherentSum& s, int mode, Quadrature quad) : quad_(quad) {
    check_mode(s, mode, "ExactMarginal");
    const std::size_t n = s.size();
    coeff_.reserve(n);
    amp_.reserve(n);
    rest_.assign(n * n, Complex{});
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& t = s.terms()[k];
        coeff_.push_back(t.coeff);
        const Complex a = t.amps[static_cast<std::size_t>(mode)];
        amp_.push_back(a);
        const double peak = std::numbers::sqrt2 * (quad == Quadrature::X ? a.real() : a.imag());
        lo = std::min(lo, peak);
        hi = std::max(hi, peak);
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
            Complex e{};
            for (int r = 0; r < s.modes(); ++r) {
                if (r == mode) {
                    continue;
                }
                e += log_overlap(s.terms()[k].amps[static_cast<std::size_t>(r)],
                                 s.terms()[l].amps[static_cast<std::size_t>(r)]);
            }
            rest_[k * n + l] = e;
        }
    }
    lo_ = lo - 10.0;
    hi_ = hi + 10.0;
}

double ExactMarginal::operator()(double q) const {
    const std::size_t n = coeff_.size();
    std::vector<Complex> e(n);
    for (std::size_t k = 0; k < n; ++k) {
        e[k] = log_quadrature(quad_, q, amp_[k]);
    }
    Complex sum{};
    for (std::size_t k = 0; k < n; ++k) {
        const Complex ck = std::conj(coeff_[k]);
        const Complex ek = std::conj(e[k]);
        for (std::size_t l = 0; l < n; ++l) {
            sum += ck * coeff_[l] * std::exp(ek + e[l] + rest_[k * n + l]);
        }
    }
    return std::max(0.0, sum.real() / std::sqrt(std::numbers::pi));
}

double ExactMarginal::integral(double lo, double hi) const {
    const double a = std::max(lo, lo_);
    const double b = std::min(hi, hi_);
    if (!(b > a)) {
        return 0.0;
    }
    return integrate([this](double q) { return (*this)(q); }, a, b, 0.25);
}

fock::PureState to_fock(const CoherentSum& s, int cutoff) {
    return to_fock(s, std::vector<int>(static_cast<std::size_t>(s.modes()), cutoff));
}

fock::PureState to_fock(const CoherentSum& s, const std::vector<int>& cutoffs) {
    if (static_cast<int>(cutoffs.size()) != s.modes()) {
        throw ShapeMismatch("to_fock: cutoff count does not match mode count");
    }
    for (const auto& t : s.terms()) {
        for (std::size_t k = 0; k < t.amps.size(); ++k) {
            const int need = fock::cutoff_for_amplitude(std::abs(t.amps[k]));
            if (cutoffs[k] < need) {
                throw InsufficientCutoff("to_fock: insufficient cutoff " +
                                         std::to_string(cutoffs[k]) + " for amplitude " +
                                         std::to_string(std::abs(t.amps[k])) + " (need >= " +
                                         std::to_string(need) + ")");
            }
        }
    }
    fock::PureState out(cutoffs);
    auto dst = out.amplitudes();
    std::vector<std::vector<Complex>> per_mode(cutoffs.size());
    for (const auto& t : s.terms()) {
        for (std::size_t k = 0; k < cutoffs.size(); ++k) {
            auto& v = per_mode[k];
            v.assign(static_cast<std::size_t>(cutoffs[k]) + 1, Complex{});
            v[0] = std::exp(-0.5 * std::norm(t.amps[k]));
            for (std::size_t n = 1; n < v.size(); ++n) {
                v[n] = v[n - 1] * t.amps[k] / std::sqrt(static_cast<double>(n));
            }
        }
        // Accumulate the product state mode by mode (row-major, mode 0 slowest).
        std::vector<Complex> prod{t.coeff};
        for (const auto& v : per_mode) {
            std::vector<Complex> next(prod.size() * v.size());
            for (std::size_t a = 0; a < prod.size(); ++a) {
                for (std::size_t b = 0; b < v.size(); ++b) {
                    next[a * v.size() + b] = prod[a] * v[b];
                }
            }
            prod = std::move(next);
        }
        for (std::size_t k = 0; k < prod.size(); ++k) {
            dst[k] += prod[k];
        }
    }
    return out;
}

CoherentSum cat_single(double alpha) {
    CoherentSum s(1);
    s.add(1.0, {alpha});
    s.add(1.0, {-alpha});
    return s;
}

CoherentSum cat_two(double alpha, double theta) {
    CoherentSum s(2);
    s.add(std::polar(1.0, theta), {alpha, alpha});
    s.add(std::polar(1.0, -theta), {-alpha, -alpha});
    return s;
}

double max_amplitude(const CoherentSum& s) {
    double m = 0.0;
    for (const auto& t : s.terms()) {
        for (const auto& a : t.amps) {
            m = std::max(m, std::abs(a));
        }
    }
    return m;
}

} // namespace catrep::cat
