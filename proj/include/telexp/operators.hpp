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

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "telexp/statevec.hpp"

namespace telexp {

inline constexpr std::size_t kMaxOperatorDim = 256;
/// |det| at or below this is treated as singular.
inline constexpr double kSingularThreshold = 1e-12;
/// max |U U^dagger - I| at or below this is treated as unitary.
inline constexpr double kUnitaryThreshold = 1e-10;

/// Dense square complex matrix, row-major, power-of-two side.
class Operator {
  public:
    Operator(std::size_t dim, std::vector<Amplitude> entries);

    static Operator zero(std::size_t dim);
    static Operator identity(std::size_t dim);
    static Operator diagonal(std::span<const Amplitude> diag);
    static Operator diagonal(std::initializer_list<Amplitude> diag);

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] int num_qubits() const;
    [[nodiscard]] std::span<const Amplitude> entries() const { return entries_; }

    [[nodiscard]] const Amplitude& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    Amplitude& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }

    [[nodiscard]] Operator adjoint() const;
    [[nodiscard]] Operator scaled(Amplitude factor) const;
    [[nodiscard]] std::vector<Amplitude> diagonal_entries() const;

    /// Frobenius norm of the off-diagonal part.
    [[nodiscard]] double off_diagonal_mass() const;

    friend Operator operator*(const Operator& a, const Operator& b);
    friend Operator operator+(const Operator& a, const Operator& b);
    friend Operator operator-(const Operator& a, const Operator& b);

  private:
    std::size_t dim_;
    std::vector<Amplitude> entries_;
};

/// Matrix-vector product on a bare amplitude list (length dim).
std::vector<Amplitude> multiply(const Operator& op, std::span<const Amplitude> v);

/// Largest entrywise |a - b|.
double max_abs_diff(const Operator& a, const Operator& b);

/**
 * Single-qubit corrections indexed by Bell outcome 1..4.
 *
 * YReal is the real matrix [[0,-1],[1,0]], i.e. i times the usual Pauli-Y.
 */
enum class PauliKind { I = 1, Z = 2, X = 3, YReal = 4 };

PauliKind pauli_for_bell_index(int k);
std::string_view to_string(PauliKind kind);
Operator pauli(PauliKind kind);

/**
 * Bell basis in outcome order:
 * 1 = (|00>+|11>)/sqrt2, 2 = (|00>-|11>)/sqrt2,
 * 3 = (|01>+|10>)/sqrt2, 4 = (|01>-|10>)/sqrt2.
 */
StateVector bell_state(int k);
StateVector bell_state(int k, std::vector<Label> labels);

/// Controlled-NOT, control on the first (most significant) qubit.
Operator cnot();

Operator kron(const Operator& a, const Operator& b);

/// LU determinant with partial pivoting.
Amplitude determinant(const Operator& op);

/// Gauss-Jordan inverse; throws SingularError when |det| <= kSingularThreshold.
Operator inverse(const Operator& op);

enum class OperatorClass { Unitary, InvertibleNonUnitary, Singular };
std::string_view to_string(OperatorClass c);

/// Max-norm distance of op * op^dagger from the identity.
double unitarity_defect(const Operator& op);

OperatorClass classify(const Operator& op);

}  // namespace telexp
