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

#include <array>
#include <string_view>
#include <vector>

#include "telexp/operators.hpp"
#include "telexp/rng.hpp"
#include "telexp/statevec.hpp"

namespace telexp {

/// Labels of the six protocol qubits, in register order.
inline const std::vector<Label> kSenderInputLabels{"1", "2"};
inline const std::vector<Label> kChannelLabels{"3", "4", "5", "6"};
inline const std::vector<Label> kReceiverLabels{"5", "6"};

/**
 * Coefficients of the shared four-qubit resource
 *   alpha|0000> + beta|1001> + gamma|0110> + delta|1111>   on qubits 3,4,5,6.
 *
 * Coefficients are nonnegative reals with unit sum of squares (within 1e-12).
 */
class ChannelSpec {
  public:
    ChannelSpec(double alpha, double beta, double gamma, double delta);
    explicit ChannelSpec(const std::array<double, 4>& coeffs)
        : ChannelSpec(coeffs[0], coeffs[1], coeffs[2], coeffs[3]) {}

    /// Equal-weight channel (1/2, 1/2, 1/2, 1/2).
    static ChannelSpec maximally_entangled();

    [[nodiscard]] double alpha() const { return coeffs_[0]; }
    [[nodiscard]] double beta() const { return coeffs_[1]; }
    [[nodiscard]] double gamma() const { return coeffs_[2]; }
    [[nodiscard]] double delta() const { return coeffs_[3]; }
    [[nodiscard]] const std::array<double, 4>& coefficients() const { return coeffs_; }
    [[nodiscard]] double min_coefficient() const;

    [[nodiscard]] StateVector state() const;

  private:
    std::array<double, 4> coeffs_;
};

/// a|00> + b|01> + c|10> + d|11>, normalized within 1e-12.
class InputState {
  public:
    InputState(Amplitude a, Amplitude b, Amplitude c, Amplitude d);
    explicit InputState(const std::array<Amplitude, 4>& amps)
        : InputState(amps[0], amps[1], amps[2], amps[3]) {}

    /// Computational basis input |bits>, index 0..3.
    static InputState basis(int index);

    [[nodiscard]] const std::array<Amplitude, 4>& amplitudes() const { return amps_; }
    [[nodiscard]] StateVector state(std::vector<Label> labels = kSenderInputLabels) const;

  private:
    std::array<Amplitude, 4> amps_;
};

ChannelSpec random_channel(Rng& rng, double min_coefficient = 0.0);
InputState random_input(Rng& rng);

/// Operator on the receiver pair induced by Bell outcome i on (1,4) and j on (2,3).
struct TransformationOperator {
    int i = 1;
    int j = 1;
    Operator matrix = Operator::zero(4);
};

/// kron(pauli(first), pauli(second)) * diag reproduces the source operator.
struct Factorization {
    PauliKind first = PauliKind::I;
    PauliKind second = PauliKind::I;
    Operator diag = Operator::zero(4);
};

/**
 * Builds sigma^{ij} column by column: each computational basis input is
 * joined with the channel, projected onto Bell states i on (1,4) and j on
 * (2,3), and the residual on (5,6) is multiplied by 4.
 */
TransformationOperator sigma_extract(const ChannelSpec& channel, int i, int j);

/// All 16 operators, ordered (1,1), (1,2), ..., (4,4).
std::vector<TransformationOperator> sigma_table(const ChannelSpec& channel);

/// Sum over the 16 outcomes of ||(1/4) sigma^{ij} chi||^2.
double completeness_check(const InputState& input, const ChannelSpec& channel);

Factorization factorize(const TransformationOperator& sigma);

enum class Feasibility { Deterministic, Probabilistic, Impossible };
std::string_view to_string(Feasibility f);

/// Classifies all 16 operators; throws Error if they disagree.
Feasibility invertibility_check(const ChannelSpec& channel);

/**
 * Closed-form operator table as it circulates in print, transcribed entry for
 * entry (factor 2 included). Projection agrees with it except at (1,3),
 * (1,4), (2,3) and (2,4), where the gamma/delta entries of the lower block
 * are exchanged, and at (3,2), whose signs duplicate (4,1).
 */
Operator tabulated_sigma(const ChannelSpec& channel, int i, int j);

}  // namespace telexp
