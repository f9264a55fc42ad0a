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

// Dense amplitude kernels used by the state-vector layer. Every kernel has an
// OpenMP implementation (namespace kernels) and a deliberately naive serial
// reference (namespace kernels::serial) that tests and benchmarks compare
// against. Qubit positions are 0-based from the most significant bit.

#include <complex>
#include <cstddef>
#include <span>

namespace telexp::kernels {

using Amplitude = std::complex<double>;

/// Registers below this dimension run single-threaded.
inline constexpr std::size_t kParallelThreshold = 64;

/**
 * out = (op on targets) * in.
 *
 * `matrix` is row-major with side 2^targets.size(); targets[0] is the
 * operator's most significant bit. `in` and `out` must not alias.
 */
void apply_matrix(std::span<const Amplitude> in, std::span<Amplitude> out, int num_qubits,
                  std::span<const int> targets, std::span<const Amplitude> matrix);

/**
 * out[r] = sum_t conj(pattern[t]) * in[index(r, t)], where r enumerates the
 * non-target qubits in register order and t the target qubits in the given
 * order.
 */
void project(std::span<const Amplitude> in, std::span<Amplitude> out, int num_qubits,
             std::span<const int> targets, std::span<const Amplitude> pattern);

namespace serial {

void apply_matrix(std::span<const Amplitude> in, std::span<Amplitude> out, int num_qubits,
                  std::span<const int> targets, std::span<const Amplitude> matrix);

void project(std::span<const Amplitude> in, std::span<Amplitude> out, int num_qubits,
             std::span<const int> targets, std::span<const Amplitude> pattern);

}  // namespace serial
}  // namespace telexp::kernels
