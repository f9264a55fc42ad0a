// Copyright 2026 The telexp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-only oracles. Nothing here calls into the library's projection,
// operator or protocol code.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace oracle {

using C = std::complex<double>;
using Mat4 = std::array<std::array<C, 4>, 4>;

// bell[k][x][y] = amplitude of |xy> in Bell state k+1.
inline std::array<std::array<std::array<double, 2>, 2>, 4> bell_table() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{
        {{{h, 0.0}, {0.0, h}}},
        {{{h, 0.0}, {0.0, -h}}},
        {{{0.0, h}, {h, 0.0}}},
        {{{0.0, h}, {-h, 0.0}}},
    }};
}

// Channel amplitude <q3 q4 q5 q6|phi>.
inline double channel_amp(const std::array<double, 4>& c, int q3, int q4, int q5, int q6) {
    if (q3 == 0 && q4 == 0 && q5 == 0 && q6 == 0) return c[0];
    if (q3 == 1 && q4 == 0 && q5 == 0 && q6 == 1) return c[1];
    if (q3 == 0 && q4 == 1 && q5 == 1 && q6 == 0) return c[2];
    if (q3 == 1 && q4 == 1 && q5 == 1 && q6 == 1) return c[3];
    return 0.0;
}

/// 4 * <bell_i|_{14} <bell_j|_{23} (|in>_{12} (x) |phi>_{3456}), summed bit by bit.
inline Mat4 brute_sigma(const std::array<double, 4>& c, int i, int j) {
    const auto bell = bell_table();
    Mat4 m{};
    for (int in = 0; in < 4; ++in) {
        const int q1 = in >> 1, q2 = in & 1;
        for (int out = 0; out < 4; ++out) {
            const int q5 = out >> 1, q6 = out & 1;
            double acc = 0.0;
            for (int q3 = 0; q3 < 2; ++q3) {
                for (int q4 = 0; q4 < 2; ++q4) {
                    acc += bell[i - 1][q1][q4] * bell[j - 1][q2][q3] * channel_amp(c, q3, q4, q5, q6);
                }
            }
            m[out][in] = 4.0 * acc;
        }
    }
    return m;
}

/**
 * Total success probability by enumeration: for each outcome, the residual is
 * (1/4) sigma chi; sigma has one nonzero per column with magnitude m_c, the
 * best real rescaling leaves min(m)^2 * ||chi||^2 / ||sigma chi||^2 in the
 * success branch.
 */
inline double brute_total_success(const std::array<double, 4>& c, const std::array<C, 4>& chi) {
    double total = 0.0;
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            const Mat4 s = brute_sigma(c, i, j);
            std::array<double, 4> mag{};
            for (int col = 0; col < 4; ++col) {
                for (int row = 0; row < 4; ++row) {
                    mag[col] = std::max(mag[col], std::abs(s[row][col]));
                }
            }
            double out_norm = 0.0, in_norm = 0.0;
            for (int col = 0; col < 4; ++col) {
                out_norm += mag[col] * mag[col] * std::norm(chi[col]);
                in_norm += std::norm(chi[col]);
            }
            const double p_outcome = out_norm / 16.0;
            const double mn = *std::min_element(mag.begin(), mag.end());
            if (out_norm > 0.0) {
                total += p_outcome * (mn * mn * in_norm / out_norm);
            }
        }
    }
    return total;
}

}  // namespace oracle
