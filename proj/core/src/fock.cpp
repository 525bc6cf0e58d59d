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

#include "catrep/fock.hpp"

#include "catrep/error.hpp"
#include "catrep/homodyne.hpp"
#include "detail.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>

namespace catrep::fock {

namespace detail {

void check_mode(const PureState& s, int mode, const char* what) {
    if (mode < 0 || mode >= s.modes()) {
        throw InvalidArgument(std::string(what) + ": mode " + std::to_string(mode) +
                              " out of range for a " + std::to_string(s.modes()) + "-mode state");
    }
}

} // namespace detail

using detail::check_mode;

int cutoff_for_amplitude(double alpha_max) {
    const double a = std::abs(alpha_max);
    return static_cast<int>(std::ceil(a * a + 6.0 * a + 10.0 - 1e-9));
}

// ---- PureState ------------------------------------------------------------

PureState::PureState() : amps_(1, Complex{1.0, 0.0}) {}

PureState::PureState(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
    init_strides();
}

PureState::PureState(std::vector<int> cutoffs, std::vector<Complex> amplitudes)
    : cutoffs_(std::move(cutoffs)) {
    init_strides();
    if (amplitudes.size() != amps_.size()) {
        throw ShapeMismatch("PureState: amplitude count " + std::to_string(amplitudes.size()) +
                            " does not match cutoffs (expected " + std::to_string(amps_.size()) +
                            ")");
    }
    amps_ = std::move(amplitudes);
}

void PureState::init_strides() {
    strides_.assign(cutoffs_.size(), 1);
    std::size_t total = 1;
    for (int k = static_cast<int>(cutoffs_.size()) - 1; k >= 0; --k) {
        const int c = cutoffs_[static_cast<std::size_t>(k)];
        if (c < 0) {
            throw InvalidArgument("PureState: negative cutoff");
        }
        strides_[static_cast<std::size_t>(k)] = total;
        total *= static_cast<std::size_t>(c + 1);
    }
    amps_.assign(total, Complex{});
}

std::size_t PureState::offset(std::span<const int> occupation) const {
    if (occupation.size() != cutoffs_.size()) {
        throw ShapeMismatch("PureState: occupation has wrong number of modes");
    }
    std::size_t off = 0;
    for (std::size_t k = 0; k < occupation.size(); ++k) {
        if (occupation[k] < 0 || occupation[k] > cutoffs_[k]) {
            throw InvalidArgument("PureState: occupation " + std::to_string(occupation[k]) +
                                  " exceeds cutoff of mode " + std::to_string(k));
        }
        off += static_cast<std::size_t>(occupation[k]) * strides_[k];
    }
    return off;
}

Complex PureState::operator[](std::initializer_list<int> occupation) const {
    return amps_[offset(std::span<const int>(occupation.begin(), occupation.size()))];
}

Complex& PureState::operator[](std::initializer_list<int> occupation) {
    return amps_[offset(std::span<const int>(occupation.begin(), occupation.size()))];
}

double PureState::norm2() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return s;
}

PureState PureState::normalized() const {
    const double n2 = norm2();
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw DegenerateState("cannot normalise a zero-norm state");
    }
    PureState out = *this;
    out *= Complex{1.0 / std::sqrt(n2), 0.0};
    return out;
}

PureState& PureState::operator*=(Complex factor) {
    for (auto& a : amps_) {
        a *= factor;
    }
    return *this;
}

std::vector<double> PureState::photon_distribution(int mode) const {
    check_mode(*this, mode, "photon_distribution");
    const auto split = detail::split_at(cutoffs_, mode);
    const auto d = static_cast<std::size_t>(cutoff(mode) + 1);
    std::vector<double> dist(d, 0.0);
    for (std::size_t p = 0; p < split.pre; ++p) {
        for (std::size_t n = 0; n < d; ++n) {
            const Complex* row = amps_.data() + (p * d + n) * split.post;
            double s = 0.0;
            for (std::size_t q = 0; q < split.post; ++q) {
                s += std::norm(row[q]);
            }
            dist[n] += s;
        }
    }
    return dist;
}

double PureState::mean_photon_number(int mode) const {
    const auto dist = photon_distribution(mode);
    double total = 0.0;
    double mean = 0.0;
    for (std::size_t n = 0; n < dist.size(); ++n) {
        total += dist[n];
        mean += static_cast<double>(n) * dist[n];
    }
    return total > 0.0 ? mean / total : 0.0;
}

double PureState::top_level_weight(int mode) const {
    const auto dist = photon_distribution(mode);
    const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
    return total > 0.0 ? dist.back() / total : 0.0;
}

double PureState::max_top_level_weight() const {
    double w = 0.0;
    for (int k = 0; k < modes(); ++k) {
        w = std::max(w, top_level_weight(k));
    }
    return w;
}

// ---- BranchEnsemble -------------------------------------------------------

void BranchEnsemble::add(double weight, const PureState& state) {
    if (weight < 0.0) {
        throw InvalidArgument("BranchEnsemble: negative weight");
    }
    const double n2 = state.norm2();
    if (weight * n2 == 0.0) {
        return;
    }
    branches_.push_back(Branch{weight * n2, state.normalized()});
}

double BranchEnsemble::total_weight() const {
    double s = 0.0;
    for (const auto& b : branches_) {
        s += b.weight;
    }
    return s;
}

void BranchEnsemble::renormalize() {
    const double total = total_weight();
    if (!(total > 0.0)) {
        throw DegenerateState("BranchEnsemble: zero total weight");
    }
    for (auto& b : branches_) {
        b.weight /= total;
    }
}

void BranchEnsemble::validate() const {
    for (const auto& b : branches_) {
        if (b.weight < 0.0) {
            throw InvalidArgument("BranchEnsemble: negative weight");
        }
    }
    if (total_weight() > 1.0 + 1e-12) {
        throw InvalidArgument("BranchEnsemble: total weight exceeds one");
    }
}

std::size_t BranchEnsemble::pick(double u) const {
    if (branches_.empty()) {
        throw DegenerateState("BranchEnsemble: no branches");
    }
    const double target = u * total_weight();
    double acc = 0.0;
    for (std::size_t k = 0; k < branches_.size(); ++k) {
        acc += branches_[k].weight;
        if (target < acc) {
            return k;
        }
    }
    return branches_.size() - 1;
}

// ---- constructors ---------------------------------------------------------

PureState vacuum(std::vector<int> cutoffs) {
    PureState s(std::move(cutoffs));
    s.amplitudes()[0] = 1.0;
    return s;
}

PureState vacuum(int modes, int cutoff) {
    return vacuum(std::vector<int>(static_cast<std::size_t>(modes), cutoff));
}

PureState fock_state(std::vector<int> occupation, std::vector<int> cutoffs) {
    PureState s(std::move(cutoffs));
    s.amplitudes()[s.offset(occupation)] = 1.0;
    return s;
}

namespace {

void require_cutoff(double alpha, int cutoff, const char* what) {
    const int need = cutoff_for_amplitude(alpha);
    if (cutoff < need) {
        throw InsufficientCutoff(std::string(what) + ": insufficient cutoff " +
                                 std::to_string(cutoff) + " for amplitude " +
                                 std::to_string(alpha) + " (need >= " + std::to_string(need) +
                                 ")");
    }
}

// Unnormalised-free coherent amplitudes e^{-|a|^2/2} a^n / sqrt(n!) for n <= cutoff.
std::vector<Complex> coherent_amplitudes(Complex alpha, int cutoff) {
    std::vector<Complex> c(static_cast<std::size_t>(cutoff) + 1);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= cutoff; ++n) {
        c[static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n - 1)] * alpha /
                                         std::sqrt(static_cast<double>(n));
    }
    return c;
}

} // namespace

PureState coherent(Complex alpha, int cutoff) {
    require_cutoff(std::abs(alpha), cutoff, "coherent");
    auto amps = coherent_amplitudes(alpha, cutoff);
    return PureState({cutoff}, std::move(amps)).normalized();
}

PureState cat_single(double alpha, int cutoff) {
    require_cutoff(alpha, cutoff, "cat_single");
    const auto plus = coherent_amplitudes(alpha, cutoff);
    const auto minus = coherent_amplitudes(-alpha, cutoff);
    std::vector<Complex> amps(plus.size());
    for (std::size_t n = 0; n < amps.size(); ++n) {
        amps[n] = plus[n] + minus[n];
    }
    return PureState({cutoff}, std::move(amps)).normalized();
}

PureState cat_two(double alpha, double theta, int cutoff) {
    require_cutoff(alpha, cutoff, "cat_two");
    const auto plus = coherent_amplitudes(alpha, cutoff);
    const auto minus = coherent_amplitudes(-alpha, cutoff);
    const Complex ep = std::polar(1.0, theta);
    const Complex em = std::polar(1.0, -theta);
    PureState s({cutoff, cutoff});
    auto amps = s.amplitudes();
    const auto d = static_cast<std::size_t>(cutoff + 1);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            amps[a * d + b] = ep * plus[a] * plus[b] + em * minus[a] * minus[b];
        }
    }
    return s.normalized();
}

// ---- structural helpers ---------------------------------------------------

PureState tensor(const PureState& a, const PureState& b) {
    std::vector<int> cut = a.cutoffs();
    cut.insert(cut.end(), b.cutoffs().begin(), b.cutoffs().end());
    PureState out(std::move(cut));
    auto dst = out.amplitudes();
    const auto sa = a.amplitudes();
    const auto sb = b.amplitudes();
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i] == Complex{}) {
            continue;
        }
        Complex* row = dst.data() + i * sb.size();
        for (std::size_t j = 0; j < sb.size(); ++j) {
            row[j] = sa[i] * sb[j];
        }
    }
    return out;
}

PureState embed(const PureState& s, const std::vector<int>& cutoffs, double leak_tol) {
    if (cutoffs.size() != s.cutoffs().size()) {
        throw ShapeMismatch("embed: mode count mismatch");
    }
    PureState out(cutoffs);
    auto dst = out.amplitudes();
    const auto src = s.amplitudes();
    double dropped = 0.0;
    detail::for_each_index(s.cutoffs(), [&](const std::vector<int>& idx, std::size_t off) {
        std::size_t o = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (idx[k] > cutoffs[k]) {
                dropped += std::norm(src[off]);
                return;
            }
            o += static_cast<std::size_t>(idx[k]) * out.stride(static_cast<int>(k));
        }
        dst[o] = src[off];
    });
    const double n2 = s.norm2();
    if (n2 > 0.0 && dropped > leak_tol * n2) {
        throw InsufficientCutoff("embed: truncation drops relative weight " +
                                 std::to_string(dropped / n2));
    }
    return out;
}

PureState trimmed(const PureState& s, double tol) {
    const double n2 = s.norm2();
    std::vector<int> cut = s.cutoffs();
    for (int k = 0; k < s.modes(); ++k) {
        const auto dist = s.photon_distribution(k);
        double tail = 0.0;
        int c = static_cast<int>(dist.size()) - 1;
        while (c > 0 && tail + dist[static_cast<std::size_t>(c)] < tol * n2) {
            tail += dist[static_cast<std::size_t>(c)];
            --c;
        }
        cut[static_cast<std::size_t>(k)] = c;
    }
    if (cut == s.cutoffs()) {
        return s;
    }
    return embed(s, cut, 1.0);
}

PureState permuted(const PureState& s, const std::vector<int>& order) {
    if (static_cast<int>(order.size()) != s.modes()) {
        throw ShapeMismatch("permuted: order has wrong length");
    }
    std::vector<int> cut(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        check_mode(s, order[k], "permuted");
        cut[k] = s.cutoff(order[k]);
    }
    PureState out(cut);
    auto dst = out.amplitudes();
    const auto src = s.amplitudes();
    detail::for_each_index(cut, [&](const std::vector<int>& idx, std::size_t off) {
        std::size_t o = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            o += static_cast<std::size_t>(idx[k]) * s.stride(order[k]);
        }
        dst[off] = src[o];
    });
    return out;
}

// ---- beam splitter ---------------------------------------------------------

const std::vector<double>& beamsplitter_block(int total) {
    static std::mutex mutex;
    static std::vector<std::unique_ptr<const std::vector<double>>> blocks;
    if (total < 0) {
        throw InvalidArgument("beamsplitter_block: negative photon number");
    }
    std::lock_guard lock(mutex);
    if (blocks.empty()) {
        blocks.push_back(std::make_unique<const std::vector<double>>(1, 1.0));
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    while (static_cast<int>(blocks.size()) <= total) {
        // Columns of block M+1 follow from block M by one more creation
        // operator: (a_i^dag +- a_j^dag)/sqrt2 in the output basis.
        const int m = static_cast<int>(blocks.size()) - 1;
        const auto& prev = *blocks.back();
        const auto dp = static_cast<std::size_t>(m + 1);
        const auto dn = static_cast<std::size_t>(m + 2);
        std::vector<double> next(dn * dn, 0.0);
        auto raise = [&](std::size_t col_prev, double sign, double scale, std::size_t col_next) {
            for (std::size_t k = 0; k < dn; ++k) {
                const double below = k > 0 ? prev[(k - 1) * dp + col_prev] : 0.0;
                const double here = k < dp ? prev[k * dp + col_prev] : 0.0;
                next[k * dn + col_next] =
                    scale * inv_sqrt2 *
                    (std::sqrt(static_cast<double>(k)) * below +
                     sign * std::sqrt(static_cast<double>(m + 1 - static_cast<int>(k))) * here);
            }
        };
        // Input |n, M+1-n>: n >= 1 comes from |n-1, M+1-n> by a_i^dag.
        for (std::size_t n = 1; n < dn; ++n) {
            raise(n - 1, +1.0, 1.0 / std::sqrt(static_cast<double>(n)), n);
        }
        // Input |0, M+1> comes from |0, M> by a_j^dag.
        raise(0, -1.0, 1.0 / std::sqrt(static_cast<double>(m + 1)), 0);
        blocks.push_back(std::make_unique<const std::vector<double>>(std::move(next)));
    }
    return *blocks[static_cast<std::size_t>(total)];
}

PureState apply_beamsplitter(const PureState& s, int i, int j) {
    check_mode(s, i, "apply_beamsplitter");
    check_mode(s, j, "apply_beamsplitter");
    return apply_beamsplitter(s, i, j, s.cutoff(i), s.cutoff(j));
}

PureState apply_beamsplitter(const PureState& s, int i, int j, int out_cutoff_i, int out_cutoff_j) {
    check_mode(s, i, "apply_beamsplitter");
    check_mode(s, j, "apply_beamsplitter");
    if (i == j) {
        throw InvalidArgument("apply_beamsplitter: modes must differ");
    }
    std::vector<int> cut = s.cutoffs();
    cut[static_cast<std::size_t>(i)] = out_cutoff_i;
    cut[static_cast<std::size_t>(j)] = out_cutoff_j;
    PureState out(cut);

    const int di = s.cutoff(i);
    const int dj = s.cutoff(j);
    const int oi = out_cutoff_i;
    const int oj = out_cutoff_j;
    const int nmax = std::min(di + dj, oi + oj);
    for (int n = 0; n <= nmax; ++n) {
        (void)beamsplitter_block(n);
    }

    // Enumerate the other modes once, keeping offsets in both tensors.
    std::vector<int> rest_cut;
    std::vector<std::size_t> in_stride;
    std::vector<std::size_t> out_stride;
    for (int k = 0; k < s.modes(); ++k) {
        if (k == i || k == j) {
            continue;
        }
        rest_cut.push_back(s.cutoff(k));
        in_stride.push_back(s.stride(k));
        out_stride.push_back(out.stride(k));
    }
    const std::size_t si = s.stride(i);
    const std::size_t sj = s.stride(j);
    const std::size_t ti = out.stride(i);
    const std::size_t tj = out.stride(j);
    const auto src = s.amplitudes();
    auto dst = out.amplitudes();
    std::vector<Complex> v(static_cast<std::size_t>(di + dj + 1));

    detail::for_each_index(rest_cut, [&](const std::vector<int>& idx, std::size_t) {
        std::size_t in_base = 0;
        std::size_t out_base = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            in_base += static_cast<std::size_t>(idx[k]) * in_stride[k];
            out_base += static_cast<std::size_t>(idx[k]) * out_stride[k];
        }
        for (int n = 0; n <= nmax; ++n) {
            const int lo = std::max(0, n - dj);
            const int hi = std::min(di, n);
            bool any = false;
            for (int a = lo; a <= hi; ++a) {
                const Complex c = src[in_base + static_cast<std::size_t>(a) * si +
                                      static_cast<std::size_t>(n - a) * sj];
                v[static_cast<std::size_t>(a)] = c;
                any = any || c != Complex{};
            }
            if (!any) {
                continue;
            }
            const auto& block = beamsplitter_block(n);
            const auto d = static_cast<std::size_t>(n + 1);
            const int klo = std::max(0, n - oj);
            const int khi = std::min(oi, n);
            for (int k = klo; k <= khi; ++k) {
                Complex acc{};
                const double* row = block.data() + static_cast<std::size_t>(k) * d;
                for (int a = lo; a <= hi; ++a) {
                    acc += row[a] * v[static_cast<std::size_t>(a)];
                }
                dst[out_base + static_cast<std::size_t>(k) * ti +
                    static_cast<std::size_t>(n - k) * tj] = acc;
            }
        }
    });
    return out;
}

// ---- single-mode operators -------------------------------------------------

namespace {

// out = M (row-major (dout+1) x (din+1)) applied to `mode`.
template <class T>
PureState apply_mode_matrix(const PureState& s, int mode, const std::vector<T>& m, int dout) {
    std::vector<int> cut = s.cutoffs();
    cut[static_cast<std::size_t>(mode)] = dout;
    PureState out(cut);
    const auto split = detail::split_at(s.cutoffs(), mode);
    const auto din = static_cast<std::size_t>(s.cutoff(mode) + 1);
    const auto do_ = static_cast<std::size_t>(dout + 1);
    const auto src = s.amplitudes();
    auto dst = out.amplitudes();
    std::vector<Complex> col(din);
    for (std::size_t p = 0; p < split.pre; ++p) {
        for (std::size_t q = 0; q < split.post; ++q) {
            bool any = false;
            for (std::size_t n = 0; n < din; ++n) {
                col[n] = src[(p * din + n) * split.post + q];
                any = any || col[n] != Complex{};
            }
            if (!any) {
                continue;
            }
            for (std::size_t k = 0; k < do_; ++k) {
                Complex acc{};
                const T* row = m.data() + k * din;
                for (std::size_t n = 0; n < din; ++n) {
                    acc += row[n] * col[n];
                }
                dst[(p * do_ + k) * split.post + q] = acc;
            }
        }
    }
    return out;
}

void check_leak(const PureState& in, const PureState& out, double leak_tol, const char* what) {
    const double n_in = in.norm2();
    if (n_in <= 0.0) {
        return;
    }
    const double lost = (n_in - out.norm2()) / n_in;
    if (lost > leak_tol) {
        throw InsufficientCutoff(std::string(what) + ": output cutoff loses relative weight " +
                                 std::to_string(lost) + " (tolerance " +
                                 std::to_string(leak_tol) + ")");
    }
}

} // namespace

std::vector<double> squeeze_matrix(double s, int in_cutoff, int out_cutoff) {
    if (!(s > 0.0)) {
        throw InvalidArgument("squeeze: factor must be positive");
    }
    const double r = 0.5 * std::log(s);
    const double ch = std::cosh(r);
    const double sh = std::sinh(r);
    const double th = std::tanh(r);
    // Columns S|n> = (a^dag cosh r + a sinh r)^n S|0> / sqrt(n!). A column of
    // length L yields an exact column of length L-1, so start long enough.
    const int len = out_cutoff + in_cutoff + 2;
    std::vector<double> col(static_cast<std::size_t>(len), 0.0);
    col[0] = 1.0 / std::sqrt(ch);
    for (int k = 2; k < len; k += 2) {
        col[static_cast<std::size_t>(k)] =
            col[static_cast<std::size_t>(k - 2)] * (-th) *
            std::sqrt(static_cast<double>(k - 1) / static_cast<double>(k));
    }
    const auto din = static_cast<std::size_t>(in_cutoff + 1);
    std::vector<double> m(static_cast<std::size_t>(out_cutoff + 1) * din, 0.0);
    std::vector<double> next(col.size(), 0.0);
    int valid = len;
    for (int n = 0; n <= in_cutoff; ++n) {
        if (n > 0) {
            const double inv = 1.0 / std::sqrt(static_cast<double>(n));
            for (int k = 0; k + 1 < valid; ++k) {
                const double below = k > 0 ? col[static_cast<std::size_t>(k - 1)] : 0.0;
                next[static_cast<std::size_t>(k)] =
                    inv * (ch * std::sqrt(static_cast<double>(k)) * below +
                           sh * std::sqrt(static_cast<double>(k + 1)) *
                               col[static_cast<std::size_t>(k + 1)]);
            }
            --valid;
            std::swap(col, next);
        }
        for (int k = 0; k <= out_cutoff; ++k) {
            m[static_cast<std::size_t>(k) * din + static_cast<std::size_t>(n)] =
                col[static_cast<std::size_t>(k)];
        }
    }
    return m;
}

PureState apply_squeeze(const PureState& state, int i, double s, std::optional<int> out_cutoff,
                        double leak_tol) {
    check_mode(state, i, "apply_squeeze");
    if (!(s > 0.0)) {
        throw InvalidArgument("apply_squeeze: squeeze factor must be positive");
    }
    const int dout = out_cutoff.value_or(state.cutoff(i));
    const auto m = squeeze_matrix(s, state.cutoff(i), dout);
    PureState out = apply_mode_matrix(state, i, m, dout);
    check_leak(state, out, leak_tol, "apply_squeeze");
    return out;
}

PureState apply_displacement(const PureState& state, int i, Complex beta,
                             std::optional<int> out_cutoff, double leak_tol) {
    check_mode(state, i, "apply_displacement");
    const int din = state.cutoff(i);
    const int dout = out_cutoff.value_or(din);
    // Columns D|n> = (a^dag - beta^*)^n |beta> / sqrt(n!); a^dag only shifts
    // upwards so every column of length dout+1 is exact.
    const auto len = static_cast<std::size_t>(dout + 1);
    std::vector<Complex> col(len);
    col[0] = std::exp(-0.5 * std::norm(beta));
    for (std::size_t k = 1; k < len; ++k) {
        col[k] = col[k - 1] * beta / std::sqrt(static_cast<double>(k));
    }
    const auto d = static_cast<std::size_t>(din + 1);
    std::vector<Complex> m(len * d);
    std::vector<Complex> next(len);
    const Complex bc = std::conj(beta);
    for (int n = 0; n <= din; ++n) {
        if (n > 0) {
            const double inv = 1.0 / std::sqrt(static_cast<double>(n));
            for (std::size_t k = 0; k < len; ++k) {
                const Complex below = k > 0 ? col[k - 1] : Complex{};
                next[k] = inv * (std::sqrt(static_cast<double>(k)) * below - bc * col[k]);
            }
            std::swap(col, next);
        }
        for (std::size_t k = 0; k < len; ++k) {
            m[k * d + static_cast<std::size_t>(n)] = col[k];
        }
    }
    PureState out = apply_mode_matrix(state, i, m, dout);
    check_leak(state, out, leak_tol, "apply_displacement");
    return out;
}

PureState apply_phase_rotation(const PureState& state, int i, double phi) {
    check_mode(state, i, "apply_phase_rotation");
    PureState out = state;
    const auto split = detail::split_at(state.cutoffs(), i);
    const auto d = static_cast<std::size_t>(state.cutoff(i) + 1);
    auto amps = out.amplitudes();
    for (std::size_t n = 0; n < d; ++n) {
        const Complex ph = std::polar(1.0, phi * static_cast<double>(n));
        for (std::size_t p = 0; p < split.pre; ++p) {
            Complex* row = amps.data() + (p * d + n) * split.post;
            for (std::size_t q = 0; q < split.post; ++q) {
                row[q] *= ph;
            }
        }
    }
    return out;
}

PureState project_fock(const PureState& s, int i, int n) {
    check_mode(s, i, "project_fock");
    if (n < 0 || n > s.cutoff(i)) {
        throw InvalidArgument("project_fock: photon number outside cutoff");
    }
    std::vector<int> cut = s.cutoffs();
    cut.erase(cut.begin() + i);
    PureState out(cut);
    const auto split = detail::split_at(s.cutoffs(), i);
    const auto d = static_cast<std::size_t>(s.cutoff(i) + 1);
    const auto src = s.amplitudes();
    auto dst = out.amplitudes();
    for (std::size_t p = 0; p < split.pre; ++p) {
        for (std::size_t q = 0; q < split.post; ++q) {
            dst[p * split.post + q] = src[(p * d + static_cast<std::size_t>(n)) * split.post + q];
        }
    }
    return out;
}

// ---- overlaps ---------------------------------------------------------------

Complex inner(const PureState& a, const PureState& b) {
    if (!a.same_shape(b)) {
        throw ShapeMismatch("inner: states have different modes or cutoffs");
    }
    Complex s{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += std::conj(x[k]) * y[k];
    }
    return s;
}

double fidelity(const PureState& a, const PureState& b) {
    const double na = a.norm2();
    const double nb = b.norm2();
    if (!(na > 0.0) || !(nb > 0.0)) {
        throw DegenerateState("fidelity: zero-norm state");
    }
    return std::norm(inner(a, b)) / (na * nb);
}

double fidelity(const BranchEnsemble& a, const PureState& b) {
    double f = 0.0;
    for (const auto& br : a.branches()) {
        f += br.weight * fidelity(br.state, b);
    }
    return f;
}

Complex wavefunction(const PureState& s, Quadrature quad, double q) {
    if (s.modes() != 1) {
        throw ShapeMismatch("wavefunction: expects a single-mode state");
    }
    std::vector<Complex> k(static_cast<std::size_t>(s.cutoff(0) + 1));
    quadrature_kernel(quad, q, k);
    Complex psi{};
    const auto amps = s.amplitudes();
    for (std::size_t n = 0; n < k.size(); ++n) {
        psi += k[n] * amps[n];
    }
    return psi;
}

namespace {

struct Moments {
    Complex a;       // <a>
    Complex a2;      // <a^2>
    double n = 0.0;  // <a^dag a>
};

Moments ladder_moments(const PureState& s, int mode) {
    const auto rho = reduced_density(s, mode);
    const auto d = static_cast<std::size_t>(s.cutoff(mode) + 1);
    double tr = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        tr += rho[n * d + n].real();
    }
    if (!(tr > 0.0)) {
        throw DegenerateState("quadrature moments of a zero-norm state");
    }
    Moments m;
    for (std::size_t n = 1; n < d; ++n) {
        m.a += std::sqrt(static_cast<double>(n)) * rho[n * d + n - 1];
        m.n += static_cast<double>(n) * rho[n * d + n].real();
        if (n >= 2) {
            m.a2 += std::sqrt(static_cast<double>(n * (n - 1))) * rho[n * d + n - 2];
        }
    }
    m.a /= tr;
    m.a2 /= tr;
    m.n /= tr;
    return m;
}

} // namespace

double quadrature_mean(const PureState& s, int mode, Quadrature quad) {
    const auto m = ladder_moments(s, mode);
    return quad == Quadrature::X ? std::sqrt(2.0) * m.a.real() : std::sqrt(2.0) * m.a.imag();
}

double quadrature_variance(const PureState& s, int mode, Quadrature quad) {
    const auto m = ladder_moments(s, mode);
    // x^2 = (a^2 + a^dag^2 + 2 a^dag a + 1)/2, p^2 = (2 a^dag a + 1 - a^2 - a^dag^2)/2.
    const double second = quad == Quadrature::X ? m.a2.real() + m.n + 0.5
                                                 : -m.a2.real() + m.n + 0.5;
    const double mean = quad == Quadrature::X ? std::sqrt(2.0) * m.a.real()
                                              : std::sqrt(2.0) * m.a.imag();
    return second - mean * mean;
}

std::string to_json(const PureState& s) {
    nlohmann::json j;
    j["modes"] = s.modes();
    j["cutoffs"] = s.cutoffs();
    j["cutoff"] = s.cutoffs().empty() ? 0 : *std::max_element(s.cutoffs().begin(), s.cutoffs().end());
    auto arr = nlohmann::json::array();
    for (const auto& a : s.amplitudes()) {
        arr.push_back({a.real(), a.imag()});
    }
    j["amplitudes"] = std::move(arr);
    return j.dump();
}

} // namespace catrep::fock
