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

#include <algorithm>
#include <cstdint>
#include <vector>

#include "telexp/kernels.hpp"

namespace telexp::kernels {
namespace {

using Index = std::int64_t;

Index bit_of(int num_qubits, int position) { return Index{1} << (num_qubits - 1 - position); }

// offsets[c] sets the target bits named by c; bit 0 of targets is c's MSB.
std::vector<Index> target_offsets(int num_qubits, std::span<const int> targets) {
    const int k = static_cast<int>(targets.size());
    std::vector<Index> offsets(std::size_t{1} << k, 0);
    for (Index c = 0; c < static_cast<Index>(offsets.size()); ++c) {
        Index off = 0;
        for (int t = 0; t < k; ++t) {
            if ((c >> (k - 1 - t)) & 1) {
                off |= bit_of(num_qubits, targets[static_cast<std::size_t>(t)]);
            }
        }
        offsets[static_cast<std::size_t>(c)] = off;
    }
    return offsets;
}

// Spreads the bits of `packed` over the free (non-target) bit slots, low to high.
Index deposit(Index packed, std::span<const Index> free_bits) {
    Index out = 0;
    for (std::size_t b = 0; b < free_bits.size(); ++b) {
        if ((packed >> b) & 1) {
            out |= free_bits[b];
        }
    }
    return out;
}

std::vector<Index> free_bits_low_to_high(int num_qubits, std::span<const int> targets) {
    std::vector<Index> bits;
    for (int p = num_qubits - 1; p >= 0; --p) {
        if (std::find(targets.begin(), targets.end(), p) == targets.end()) {
            bits.push_back(bit_of(num_qubits, p));
        }
    }
    return bits;
}

}  // namespace

void apply_matrix(std::span<const Amplitude> in, std::span<Amplitude> out, int num_qubits,
                  std::span<const int> targets, std::span<const Amplitude> matrix) {
    const auto offsets = target_offsets(num_qubits, targets);
    const auto free_bits = free_bits_low_to_high(num_qubits, targets);
    const Index side = static_cast<Index>(offsets.size());
    const Index groups = Index{1} << free_bits.size();
    const bool parallel = in.size() >= kParallelThreshold;

#pragma omp parallel for schedule(static) if (parallel)
    for (Index g = 0; g < groups; ++g) {
        const Index base = deposit(g, free_bits);
        for (Index r = 0; r < side; ++r) {
            Amplitude acc = 0.0;
            const Amplitude* row = matrix.data() + r * side;
            for (Index c = 0; c < side; ++c) {
                acc += row[c] * in[static_cast<std::size_t>(base | offsets[static_cast<std::size_t>(c)])];
            }
            out[static_cast<std::size_t>(base | offsets[static_cast<std::size_t>(r)])] = acc;
        }
    }
}

void project(std::span<const Amplitude> in, std::span<Amplitude> out, int num_qubits,
             std::span<const int> targets, std::span<const Amplitude> pattern) {
    const auto offsets = target_offsets(num_qubits, targets);
    const auto free_bits = free_bits_low_to_high(num_qubits, targets);
    const Index rest = static_cast<Index>(out.size());
    const bool parallel = in.size() >= kParallelThreshold;

#pragma omp parallel for schedule(static) if (parallel)
    for (Index r = 0; r < rest; ++r) {
        const Index base = deposit(r, free_bits);
        Amplitude acc = 0.0;
        for (std::size_t t = 0; t < offsets.size(); ++t) {
            acc += std::conj(pattern[t]) * in[static_cast<std::size_t>(base | offsets[t])];
        }
        out[static_cast<std::size_t>(r)] = acc;
    }
}

}  // namespace telexp::kernels
