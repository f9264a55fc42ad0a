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

#include "telexp/refpath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "telexp/errors.hpp"
#include "telexp/operators.hpp"

namespace telexp {
namespace {

const std::vector<Label> kAncillaPair{"a", "b"};

StateVector signed_copy(const std::array<Amplitude, 4>& v, const std::array<int, 4>& signs,
                        const std::vector<Label>& labels) {
    std::vector<Amplitude> amps(4);
    for (std::size_t l = 0; l < 4; ++l) {
        amps[l] = static_cast<double>(signs[l]) * v[l];
    }
    return {labels, std::move(amps)};
}

std::array<Amplitude, 4> channel_amplitudes(const ChannelSpec& channel) {
    const auto& c = channel.coefficients();
    return {c[0], c[1], c[2], c[3]};
}

// Z-string on (5,6) for branch g: II, IZ, ZI, ZZ.
Operator z_string(std::size_t g) {
    const Operator i = pauli(PauliKind::I);
    const Operator z = pauli(PauliKind::Z);
    return kron((g & 2) ? z : i, (g & 1) ? z : i);
}

// X^{m_a} (x) X^{m_b}, mapping |00> to |m>.
Operator x_string(std::size_t m) {
    const Operator i = pauli(PauliKind::I);
    const Operator x = pauli(PauliKind::X);
    return kron((m & 2) ? x : i, (m & 1) ? x : i);
}

}  // namespace

StateVector BranchDecomposition::reconstruct() const {
    std::vector<Amplitude> amps(16);
    for (const auto& b : branches) {
        const StateVector term = tensor(b.system, b.ancilla);
        for (std::size_t k = 0; k < 16; ++k) {
            amps[k] += scale * term[k];
        }
    }
    return {kRefpathLabels, std::move(amps)};
}

StateVector cnot_expand(const InputState& input, const ChannelSpec& channel) {
    const StateVector joint = tensor(input.state(kSenderInputLabels), channel.state());
    const auto after_14 = project(joint, bell_state(1), {"1", "4"});
    const auto psi11 = project(after_14.residual, bell_state(1), {"2", "3"});

    const StateVector extended = tensor(psi11.residual, basis_state(kAncillaPair, "00"));
    const StateVector once = apply(extended, cnot(), {"6", "b"});
    return apply(once, cnot(), {"5", "a"});
}

BranchDecomposition branch_expansion(const InputState& input, const ChannelSpec& channel,
                                     double scale) {
    const auto coeffs = channel_amplitudes(channel);
    BranchDecomposition out{
        {{
            {signed_copy(input.amplitudes(), kBranchSigns[0], kReceiverLabels),
             signed_copy(coeffs, kBranchSigns[0], kAncillaPair)},
            {signed_copy(input.amplitudes(), kBranchSigns[1], kReceiverLabels),
             signed_copy(coeffs, kBranchSigns[1], kAncillaPair)},
            {signed_copy(input.amplitudes(), kBranchSigns[2], kReceiverLabels),
             signed_copy(coeffs, kBranchSigns[2], kAncillaPair)},
            {signed_copy(input.amplitudes(), kBranchSigns[3], kReceiverLabels),
             signed_copy(coeffs, kBranchSigns[3], kAncillaPair)},
        }},
        scale};
    return out;
}

BranchDecomposition extract_branches(const StateVector& state, const InputState& input,
                                     double scale) {
    if (state.labels() != kRefpathLabels) {
        throw LabelError("branch extraction expects a state over (5, 6, a, b)");
    }
    // Columns of `systems` are the four branch system vectors.
    Operator systems = Operator::zero(4);
    for (std::size_t g = 0; g < 4; ++g) {
        for (std::size_t l = 0; l < 4; ++l) {
            systems(l, g) = static_cast<double>(kBranchSigns[g][l]) * input.amplitudes()[l];
        }
    }
    const Operator dual = inverse(systems);

    auto extract = [&](std::size_t g) {
        std::vector<Amplitude> ancilla(4);
        for (std::size_t m = 0; m < 4; ++m) {
            for (std::size_t l = 0; l < 4; ++l) {
                ancilla[m] += dual(g, l) * state[l * 4 + m];
            }
            ancilla[m] /= scale;
        }
        StateVector system(kReceiverLabels,
                           {systems(0, g), systems(1, g), systems(2, g), systems(3, g)});
        return Branch{std::move(system), StateVector(kAncillaPair, std::move(ancilla))};
    };
    return {{extract(0), extract(1), extract(2), extract(3)}, scale};
}

double verify_branch_expansion(const InputState& input, const ChannelSpec& channel, double scale) {
    return max_abs_diff(cnot_expand(input, channel),
                        branch_expansion(input, channel, scale).reconstruct());
}

Operator cnot_identity_rhs(const ChannelSpec& channel, double scale) {
    const auto coeffs = channel_amplitudes(channel);
    Operator total = Operator::zero(16);
    for (std::size_t g = 0; g < 4; ++g) {
        Operator ancilla = Operator::zero(4);
        for (std::size_t m = 0; m < 4; ++m) {
            ancilla = ancilla + x_string(m).scaled(static_cast<double>(kBranchSigns[g][m]) * coeffs[m]);
        }
        total = total + kron(z_string(g), ancilla);
    }
    return total.scaled(scale);
}

double verify_cnot_identity(const ChannelSpec& channel, double scale) {
    const Operator sigma11 = sigma_extract(channel, 1, 1).matrix;
    const Operator rhs = cnot_identity_rhs(channel, scale);
    double worst = 0.0;
    for (const char* bits : {"0000", "0100", "1000", "1100"}) {
        const StateVector column = basis_state(kRefpathLabels, bits);
        const StateVector lhs =
            apply(apply(apply(column, sigma11, {"5", "6"}), cnot(), {"6", "b"}), cnot(), {"5", "a"});
        const StateVector right = apply(column, rhs, kRefpathLabels);
        worst = std::max(worst, max_abs_diff(lhs, right));
    }
    return worst;
}

}  // namespace telexp
