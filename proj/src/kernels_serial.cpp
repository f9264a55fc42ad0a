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

// Reference kernels: one pass over every amplitude index, reading bits one at
// a time. Slow and obvious on purpose.

#include <cstddef>

#include "telexp/kernels.hpp"

namespace telexp::kernels::serial {
namespace {

int bit_at(std::size_t index, int num_qubits, int position) {
    return static_cast<int>((index >> (num_qubits - 1 - position)) & 1U);
}

std::size_t with_bit(std::size_t index, int num_qubits, int position, int value) {
    const std::size_t mask = std::size_t{1} << (num_qubits - 1 - position);
    return value ? (index | mask) : (index & ~mask);
}

bool is_target(std::span<const int> targets, int position) {
    for (int t : targets) {
        if (t == position) {
            return true;
        }
    }
    return false;
}

}  // namespace

void apply_matrix(std::span<const Amplitude> in, std::span<Amplitude> out, int num_qubits,
                  std::span<const int> targets, std::span<const Amplitude> matrix) {
    const std::size_t k = targets.size();
    const std::size_t side = std::size_t{1} << k;
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        std::size_t row = 0;
        for (std::size_t t = 0; t < k; ++t) {
            row = (row << 1) | static_cast<std::size_t>(bit_at(idx, num_qubits, targets[t]));
        }
        Amplitude acc = 0.0;
        for (std::size_t col = 0; col < side; ++col) {
            std::size_t src = idx;
            for (std::size_t t = 0; t < k; ++t) {
                src = with_bit(src, num_qubits, targets[t], static_cast<int>((col >> (k - 1 - t)) & 1U));
            }
            acc += matrix[row * side + col] * in[src];
        }
        out[idx] = acc;
    }
}

void project(std::span<const Amplitude> in, std::span<Amplitude> out, int num_qubits,
             std::span<const int> targets, std::span<const Amplitude> pattern) {
    for (auto& o : out) {
        o = 0.0;
    }
    for (std::size_t idx = 0; idx < in.size(); ++idx) {
        std::size_t t_index = 0;
        for (int t : targets) {
            t_index = (t_index << 1) | static_cast<std::size_t>(bit_at(idx, num_qubits, t));
        }
        std::size_t r_index = 0;
        for (int p = 0; p < num_qubits; ++p) {
            if (!is_target(targets, p)) {
                r_index = (r_index << 1) | static_cast<std::size_t>(bit_at(idx, num_qubits, p));
            }
        }
        out[r_index] += std::conj(pattern[t_index]) * in[idx];
    }
}

}  // namespace telexp::kernels::serial
