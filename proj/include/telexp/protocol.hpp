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
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "telexp/expansion.hpp"
#include "telexp/operators.hpp"
#include "telexp/statevec.hpp"

namespace telexp {

inline const Label kAncillaLabel = "a";

/// Alice's two Bell outcomes: i on pair (1,4), j on pair (2,3), each 1..4.
struct OutcomeMessage {
    int i = 1;
    int j = 1;

    OutcomeMessage() = default;
    OutcomeMessage(int i_, int j_);

    /// 0..15, row-major in (i, j).
    [[nodiscard]] int flat_index() const { return (i - 1) * 4 + (j - 1); }
    static OutcomeMessage from_flat_index(int index);

    friend bool operator==(const OutcomeMessage&, const OutcomeMessage&) = default;
};

/// Bob's correction for one outcome: a Pauli pair, then the ancilla-assisted
/// collective unitary built from a_coeffs.
struct CorrectionPlan {
    PauliKind first = PauliKind::I;
    PauliKind second = PauliKind::I;
    std::array<double, 4> a_coeffs{1.0, 1.0, 1.0, 1.0};
    double k = 1.0;
};

/// Requests a random draw from a dedicated seeded stream.
struct SeededDraw {
    std::uint64_t seed = 0;
};

struct AliceMeasurement {
    OutcomeMessage message;
    StateVector residual;  // unnormalized, labels (5,6)
    double probability = 0.0;
};

/// Returned when a caller forces an outcome the state cannot produce.
struct ZeroProbabilityOutcome {
    OutcomeMessage message;
};

struct Stage2Result {
    bool success = false;
    StateVector final_state;  // labels (5,6); renormalized unless the branch is empty
    double p_success_given_outcome = 0.0;
    double branch_probability = 0.0;  // probability of the ancilla result that occurred
};

StateVector prepare_joint(const InputState& input, const ChannelSpec& channel);

/// Probability of each of the 16 outcomes, indexed by OutcomeMessage::flat_index.
std::array<double, 16> outcome_distribution(const StateVector& joint);

std::variant<AliceMeasurement, ZeroProbabilityOutcome> alice_measure(const StateVector& joint,
                                                                      OutcomeMessage choice);
AliceMeasurement alice_measure(const StateVector& joint, SeededDraw draw);

CorrectionPlan plan_correction(OutcomeMessage message, const ChannelSpec& channel);

/// Undoes the Pauli pair so only the diagonal factor acts on the input.
StateVector bob_stage1(const StateVector& residual56, const CorrectionPlan& plan);

/**
 * 8x8 collective unitary [[A1, A2], [A2, -A1]] with A1 = diag(a) and
 * A2 = diag(sqrt(1 - a^2)). The block index is the ancilla bit, so the
 * operator's most significant qubit is the ancilla; apply it with targets
 * (a, 5, 6).
 */
Operator build_u2(const CorrectionPlan& plan);

/// Adjoins |0>_a as the least significant qubit, applies U2, measures a.
/// ancilla_outcome forces the result (0 = success, 1 = failure).
Stage2Result bob_stage2(const StateVector& state56, const CorrectionPlan& plan, int ancilla_outcome);
Stage2Result bob_stage2(const StateVector& state56, const CorrectionPlan& plan, SeededDraw draw);

struct Exhaustive {};
struct Sampled {
    std::uint64_t seed = 0;
    std::uint64_t trials = 1;
};
using RunMode = std::variant<Exhaustive, Sampled>;

struct OutcomeRecord {
    OutcomeMessage message;
    double probability = 0.0;
    double success_given_outcome = 0.0;
    std::uint64_t count = 0;      // sampled mode
    std::uint64_t successes = 0;  // sampled mode
};

struct TeleportReport {
    std::vector<OutcomeRecord> per_outcome;  // 16 records
    double total_success = 0.0;
    /// Smallest fidelity seen on a success branch (1 when none occurred).
    double fidelity_on_success = 1.0;
    bool sampled = false;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double standard_error = 0.0;  // sampled mode
    Feasibility feasibility = Feasibility::Deterministic;
};

TeleportReport run_protocol(const InputState& input, const ChannelSpec& channel,
                            const RunMode& mode);

}  // namespace telexp
