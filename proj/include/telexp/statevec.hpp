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

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace telexp {

using Amplitude = std::complex<double>;
using Label = std::string;

class Operator;

/// Largest register the dense representation supports (six protocol qubits
/// plus two ancillas).
inline constexpr int kMaxQubits = 8;

/// Absolute tolerance used for amplitude equality and normalization checks.
inline constexpr double kAmplitudeTolerance = 1e-12;

/// Position of a labelled qubit inside a register. Position 0 is the most
/// significant bit of the amplitude index.
struct QubitIndex {
    Label label;
    int position = 0;
};

/**
 * Dense state vector over an ordered register of labelled qubits.
 *
 * The first label is the most significant bit of the amplitude index, so for
 * two qubits the amplitudes are ordered |00>, |01>, |10>, |11>. Vectors are
 * not required to be normalized; operations that need a normalized input say
 * so and check it.
 */
class StateVector {
  public:
    StateVector(std::vector<Label> labels, std::vector<Amplitude> amps);

    [[nodiscard]] int num_qubits() const { return static_cast<int>(labels_.size()); }
    [[nodiscard]] std::size_t dim() const { return amps_.size(); }
    [[nodiscard]] const std::vector<Label>& labels() const { return labels_; }
    [[nodiscard]] std::span<const Amplitude> amps() const { return amps_; }
    [[nodiscard]] const Amplitude& operator[](std::size_t i) const { return amps_[i]; }

    [[nodiscard]] QubitIndex index_of(std::string_view label) const;
    [[nodiscard]] bool has_label(std::string_view label) const;

    [[nodiscard]] double norm_squared() const;
    [[nodiscard]] double norm() const;
    [[nodiscard]] bool is_normalized(double tol = kAmplitudeTolerance) const;

    /// Returns a unit-norm copy. Throws NormalizationError for the zero vector.
    [[nodiscard]] StateVector normalized() const;
    [[nodiscard]] StateVector scaled(Amplitude factor) const;
    /// Same amplitudes under new labels (same count, distinct).
    [[nodiscard]] StateVector relabeled(std::vector<Label> labels) const;

  private:
    std::vector<Label> labels_;
    std::vector<Amplitude> amps_;
};

/// Labels "q0", "q1", ... used when a caller does not name its qubits.
std::vector<Label> default_labels(int num_qubits);

/// Computational basis vector; bit_pattern is a string of '0'/'1', first
/// character is the first (most significant) qubit.
StateVector basis_state(int num_qubits, std::string_view bit_pattern);
StateVector basis_state(std::vector<Label> labels, std::string_view bit_pattern);

/// Kronecker product; a's labels precede b's.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Applies op to the qubits named by targets (first target is the operator's
/// most significant bit), identity on every other qubit.
StateVector apply(const StateVector& state, const Operator& op, std::span<const Label> targets);
StateVector apply(const StateVector& state, const Operator& op,
                  std::initializer_list<Label> targets);

struct Projection {
    StateVector residual;
    double probability = 0.0;
};

/// Partial inner product <pattern|state> over targets. The residual keeps the
/// remaining labels in their original order and is not renormalized.
Projection project(const StateVector& state, const StateVector& pattern,
                   std::span<const Label> targets);
Projection project(const StateVector& state, const StateVector& pattern,
                   std::initializer_list<Label> targets);

/// <x|y>, labels must match.
Amplitude inner(const StateVector& x, const StateVector& y);

/// |<x|y>|^2 for normalized states over the same labels.
double fidelity(const StateVector& x, const StateVector& y);

/// Largest |x_k - y_k|; labels must match.
double max_abs_diff(const StateVector& x, const StateVector& y);

}  // namespace telexp
