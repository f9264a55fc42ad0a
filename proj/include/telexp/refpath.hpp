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

// Two-ancilla comparison path: Bob copies the computational basis of his pair
// onto ancillas (a, b) with two CNOTs after the (1,1) outcome, producing a
// four-branch entangled state.

#include <array>

#include "telexp/expansion.hpp"
#include "telexp/statevec.hpp"

namespace telexp {

inline const std::vector<Label> kRefpathLabels{"5", "6", "a", "b"};

/// Sign patterns of the four branches, in order: ++++, +-+-, ++--, +--+.
/// Branch g applies Z-string g to (5,6) and the same signs to (a,b).
inline constexpr std::array<std::array<int, 4>, 4> kBranchSigns{{
    {1, 1, 1, 1},
    {1, -1, 1, -1},
    {1, 1, -1, -1},
    {1, -1, -1, 1},
}};

/// Prefactor of the branch sum in the commonly quoted closed form.
inline constexpr double kPrintedBranchScale = 0.25;
/// Prefactor that reproduces the (1,1) residual (which carries sigma's factor 2).
inline constexpr double kBranchScale = 0.125;

struct Branch {
    StateVector system;   // labels (5,6)
    StateVector ancilla;  // labels (a,b)
};

struct BranchDecomposition {
    std::array<Branch, 4> branches;
    double scale = kBranchScale;

    /// scale * sum_g system_g (x) ancilla_g over (5,6,a,b).
    [[nodiscard]] StateVector reconstruct() const;
};

/// CN(5,a) CN(6,b) |psi^{11}>_{56} |00>_{ab}.
StateVector cnot_expand(const InputState& input, const ChannelSpec& channel);

/// The four sign-variant branches built directly from input and channel.
BranchDecomposition branch_expansion(const InputState& input, const ChannelSpec& channel,
                                     double scale = kBranchScale);

/**
 * Recovers the ancilla factor of each branch from a (5,6,a,b) state by
 * contracting the system pair with the dual basis of the four system
 * vectors. Requires every input amplitude to be nonzero.
 */
BranchDecomposition extract_branches(const StateVector& state, const InputState& input,
                                     double scale = kBranchScale);

/// Max-norm difference between cnot_expand and the branch expansion.
double verify_branch_expansion(const InputState& input, const ChannelSpec& channel,
                               double scale = kBranchScale);

/// Prefactor of the CNOT identity's Pauli-string sum on the |00>_ab sector.
inline constexpr double kCnotIdentityScale = 0.5;

/**
 * 16x16 operator on (5,6,a,b): the sum over the four Z-strings on (5,6) of
 * Z-string (x) (alpha I I + /- beta I X +/- gamma X I +/- delta X X),
 * signs following kBranchSigns, times `scale`.
 */
Operator cnot_identity_rhs(const ChannelSpec& channel, double scale = kCnotIdentityScale);

/// Both sides of the CNOT identity applied to the |00>_ab sector; returns the
/// max entrywise difference.
double verify_cnot_identity(const ChannelSpec& channel, double scale = kCnotIdentityScale);

}  // namespace telexp
