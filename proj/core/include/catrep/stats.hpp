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

#include <cmath>
#include <vector>

namespace catrep {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

/// Sample mean and standard error of the mean.
inline MeanSe mean_se(const std::vector<double>& v) {
    MeanSe r;
    if (v.empty()) {
        return r;
    }
    for (double x : v) {
        r.mean += x;
    }
    r.mean /= static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) {
            ss += (x - r.mean) * (x - r.mean);
        }
        r.se = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
    }
    return r;
}

} // namespace catrep
