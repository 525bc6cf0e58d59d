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

#include "catrep/fock.hpp"

#include <cstddef>
#include <vector>

namespace catrep::fock::detail {

/// Calls f(occupation, offset) for every multi-index of the given cutoffs, in
/// row-major order (offset increments by one each call).
template <class F>
void for_each_index(const std::vector<int>& cutoffs, F&& f) {
    std::vector<int> idx(cutoffs.size(), 0);
    std::size_t total = 1;
    for (int c : cutoffs) {
        total *= static_cast<std::size_t>(c + 1);
    }
    for (std::size_t off = 0; off < total; ++off) {
        f(idx, off);
        for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
            if (++idx[static_cast<std::size_t>(k)] <= cutoffs[static_cast<std::size_t>(k)]) {
                break;
            }
            idx[static_cast<std::size_t>(k)] = 0;
        }
    }
}

/// Extent of the modes before and after `mode` in row-major order.
struct Split {
    std::size_t pre = 1;
    std::size_t post = 1;
};

inline Split split_at(const std::vector<int>& cutoffs, int mode) {
    Split s;
    for (int k = 0; k < static_cast<int>(cutoffs.size()); ++k) {
        const auto d = static_cast<std::size_t>(cutoffs[static_cast<std::size_t>(k)] + 1);
        if (k < mode) {
            s.pre *= d;
        } else if (k > mode) {
            s.post *= d;
        }
    }
    return s;
}

void check_mode(const PureState& s, int mode, const char* what);

} // namespace catrep::fock::detail
