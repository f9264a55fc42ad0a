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

#include "telexp/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>

#include "telexp/errors.hpp"
#include "telexp/rng.hpp"

namespace telexp {
namespace {

// Outcomes whose probability is at or below this count as impossible.
constexpr double kZeroProbability = 1e-24;

const std::vector<Label> kPair14{"1", "4"};
const std::vector<Label> kPair23{"2", "3"};
const std::vector<Label> kU2Targets{"a", "5", "6"};

Projection measure_pair(const StateVector& joint, OutcomeMessage m) {
    const auto after_14 = project(joint, bell_state(m.i), kPair14);
    return project(after_14.residual, bell_state(m.j), kPair23);
}

}  // namespace

OutcomeMessage::OutcomeMessage(int i_, int j_) : i(i_), j(j_) {
    if (i < 1 || i > 4 || j < 1 || j > 4) {
        throw IndexError("outcome indices must be 1..4, got (" + std::to_string(i) + ", " +
                         std::to_string(j) + ")");
    }
}

OutcomeMessage OutcomeMessage::from_flat_index(int index) {
    if (index < 0 || index > 15) {
        throw IndexError("flat outcome index must be 0..15");
    }
    return {index / 4 + 1, index % 4 + 1};
}

StateVector prepare_joint(const InputState& input, const ChannelSpec& channel) {
    return tensor(input.state(kSenderInputLabels), channel.state());
}

std::array<double, 16> outcome_distribution(const StateVector& joint) {
    std::array<double, 16> p{};
    for (int i = 1; i <= 4; ++i) {
        const auto after_14 = project(joint, bell_state(i), kPair14);
        for (int j = 1; j <= 4; ++j) {
            p[static_cast<std::size_t>((i - 1) * 4 + (j - 1))] =
                project(after_14.residual, bell_state(j), kPair23).probability;
        }
    }
    return p;
}

std::variant<AliceMeasurement, ZeroProbabilityOutcome> alice_measure(const StateVector& joint,
                                                                      OutcomeMessage choice) {
    auto projected = measure_pair(joint, choice);
    if (projected.probability <= kZeroProbability) {
        return ZeroProbabilityOutcome{choice};
    }
    return AliceMeasurement{choice, std::move(projected.residual), projected.probability};
}

namespace {

int draw_outcome(const std::array<double, 16>& dist, double u) {
    int chosen = -1;
    double cumulative = 0.0;
    for (int k = 0; k < 16; ++k) {
        if (dist[static_cast<std::size_t>(k)] <= kZeroProbability) {
            continue;
        }
        chosen = k;
        cumulative += dist[static_cast<std::size_t>(k)];
        if (u < cumulative) {
            break;
        }
    }
    if (chosen < 0) {
        throw Error("joint state has no nonzero Bell outcome");
    }
    return chosen;
}

double draw_uniform(std::uint64_t seed) {
    Rng rng(seed);
    return uniform01(rng);
}

}  // namespace

AliceMeasurement alice_measure(const StateVector& joint, SeededDraw draw) {
    const auto message =
        OutcomeMessage::from_flat_index(draw_outcome(outcome_distribution(joint), draw_uniform(draw.seed)));
    auto projected = measure_pair(joint, message);
    return {message, std::move(projected.residual), projected.probability};
}

CorrectionPlan plan_correction(OutcomeMessage message, const ChannelSpec& channel) {
    const auto f = factorize(sigma_extract(channel, message.i, message.j));
    std::array<double, 4> d{};
    for (std::size_t l = 0; l < 4; ++l) {
        d[l] = f.diag(l, l).real();
        if (std::abs(d[l]) <= kSingularThreshold) {
            throw SingularError("outcome (" + std::to_string(message.i) + ", " +
                                std::to_string(message.j) +
                                ") has a singular transformation operator");
        }
        if (d[l] < 0.0) {
            throw Error("diagonal factor has a negative entry");
        }
    }
    CorrectionPlan plan;
    plan.first = f.first;
    plan.second = f.second;
    plan.k = *std::min_element(d.begin(), d.end());
    for (std::size_t l = 0; l < 4; ++l) {
        plan.a_coeffs[l] = std::min(1.0, plan.k / d[l]);
    }
    return plan;
}

StateVector bob_stage1(const StateVector& residual56, const CorrectionPlan& plan) {
    const Operator u1 = kron(pauli(plan.first), pauli(plan.second));
    return apply(residual56, u1.adjoint(), kReceiverLabels);
}

Operator build_u2(const CorrectionPlan& plan) {
    Operator u2 = Operator::zero(8);
    for (std::size_t l = 0; l < 4; ++l) {
        const double a = plan.a_coeffs[l];
        if (!std::isfinite(a) || a < 0.0 || a > 1.0) {
            throw ValidationError("collective-unitary coefficient a" + std::to_string(l + 1) +
                                  " = " + std::to_string(a) + " is outside [0, 1]");
        }
        const double s = std::sqrt(1.0 - a * a);
        u2(l, l) = a;
        u2(l, 4 + l) = s;
        u2(4 + l, l) = s;
        u2(4 + l, 4 + l) = -a;
    }
    if (unitarity_defect(u2) > kAmplitudeTolerance) {
        throw Error("collective unitary is not unitary");
    }
    return u2;
}

Stage2Result bob_stage2(const StateVector& state56, const CorrectionPlan& plan, int ancilla_outcome) {
    if (ancilla_outcome != 0 && ancilla_outcome != 1) {
        throw IndexError("ancilla outcome must be 0 or 1");
    }
    if (!state56.is_normalized()) {
        throw NormalizationError("stage-2 input must be normalized");
    }
    const StateVector extended = tensor(state56, basis_state(std::vector<Label>{kAncillaLabel}, "0"));
    const StateVector rotated = apply(extended, build_u2(plan), kU2Targets);

    const auto success = project(rotated, basis_state(1, "0"), {kAncillaLabel});
    const auto chosen = ancilla_outcome == 0
                            ? success
                            : project(rotated, basis_state(1, "1"), {kAncillaLabel});

    Stage2Result result{ancilla_outcome == 0, chosen.residual, success.probability,
                        chosen.probability};
    if (chosen.probability > kZeroProbability) {
        result.final_state = chosen.residual.normalized();
    }
    return result;
}

Stage2Result bob_stage2(const StateVector& state56, const CorrectionPlan& plan, SeededDraw draw) {
    const double u = draw_uniform(draw.seed);
    const auto probe = bob_stage2(state56, plan, 0);
    return u < probe.p_success_given_outcome ? probe : bob_stage2(state56, plan, 1);
}

namespace {

std::array<std::optional<CorrectionPlan>, 16> plan_all(const ChannelSpec& channel,
                                                       Feasibility feasibility) {
    std::array<std::optional<CorrectionPlan>, 16> plans;
    if (feasibility == Feasibility::Impossible) {
        return plans;
    }
    for (int k = 0; k < 16; ++k) {
        plans[static_cast<std::size_t>(k)] =
            plan_correction(OutcomeMessage::from_flat_index(k), channel);
    }
    return plans;
}

TeleportReport run_exhaustive(const InputState& input, const ChannelSpec& channel) {
    TeleportReport report;
    report.feasibility = invertibility_check(channel);
    const auto plans = plan_all(channel, report.feasibility);
    const StateVector joint = prepare_joint(input, channel);
    const StateVector target = input.state(kReceiverLabels);

    for (int k = 0; k < 16; ++k) {
        OutcomeRecord rec;
        rec.message = OutcomeMessage::from_flat_index(k);
        const auto measured = alice_measure(joint, rec.message);
        if (const auto* m = std::get_if<AliceMeasurement>(&measured)) {
            rec.probability = m->probability;
            if (const auto& plan = plans[static_cast<std::size_t>(k)]) {
                const StateVector corrected = bob_stage1(m->residual.normalized(), *plan);
                const auto success = bob_stage2(corrected, *plan, 0);
                const auto failure = bob_stage2(corrected, *plan, 1);
                if (std::abs(success.branch_probability + failure.branch_probability - 1.0) >
                    1e-9) {
                    throw Error("ancilla branch probabilities do not sum to one");
                }
                rec.success_given_outcome = success.p_success_given_outcome;
                if (success.branch_probability > kZeroProbability) {
                    report.fidelity_on_success = std::min(
                        report.fidelity_on_success, fidelity(success.final_state, target));
                }
            }
        }
        report.total_success += rec.probability * rec.success_given_outcome;
        report.per_outcome.push_back(rec);
    }
    return report;
}

TeleportReport run_sampled(const InputState& input, const ChannelSpec& channel, Sampled mode) {
    if (mode.trials < 1) {
        throw ValidationError("sampled mode needs at least one trial");
    }
    TeleportReport report;
    report.sampled = true;
    report.trials = mode.trials;
    report.seed = mode.seed;
    report.feasibility = invertibility_check(channel);
    const auto plans = plan_all(channel, report.feasibility);
    const StateVector joint = prepare_joint(input, channel);
    const StateVector target = input.state(kReceiverLabels);

    // Outcome and ancilla draws are the only per-trial randomness; the branch
    // states they select are computed once up front.
    const auto dist = outcome_distribution(joint);
    std::array<std::optional<Stage2Result>, 16> on_zero;
    std::array<double, 16> success_fidelity{};
    for (std::size_t k = 0; k < 16; ++k) {
        if (dist[k] <= kZeroProbability || !plans[k]) {
            continue;
        }
        const auto m = measure_pair(joint, OutcomeMessage::from_flat_index(static_cast<int>(k)));
        const StateVector corrected = bob_stage1(m.residual.normalized(), *plans[k]);
        on_zero[k] = bob_stage2(corrected, *plans[k], 0);
        success_fidelity[k] = fidelity(on_zero[k]->final_state, target);
    }

    std::uint64_t counts[16] = {};
    std::uint64_t successes[16] = {};
    double min_fidelity = 1.0;
    std::exception_ptr failure;
    const auto trials = static_cast<std::int64_t>(mode.trials);

#pragma omp parallel for schedule(static) reduction(+ : counts[:16], successes[:16]) \
    reduction(min : min_fidelity)
    for (std::int64_t t = 0; t < trials; ++t) {
        try {
            const std::uint64_t trial_seed = derive_seed(mode.seed, static_cast<std::uint64_t>(t));
            const auto k = static_cast<std::size_t>(draw_outcome(dist, draw_uniform(derive_seed(trial_seed, 0))));
            ++counts[k];
            if (const auto& branch = on_zero[k]) {
                if (draw_uniform(derive_seed(trial_seed, 1)) < branch->p_success_given_outcome) {
                    ++successes[k];
                    min_fidelity = std::min(min_fidelity, success_fidelity[k]);
                }
            }
        } catch (...) {
#pragma omp critical(telexp_sampled_failure)
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    std::uint64_t total = 0;
    for (int k = 0; k < 16; ++k) {
        OutcomeRecord rec;
        rec.message = OutcomeMessage::from_flat_index(k);
        rec.count = counts[k];
        rec.successes = successes[k];
        rec.probability = static_cast<double>(counts[k]) / static_cast<double>(mode.trials);
        rec.success_given_outcome =
            counts[k] ? static_cast<double>(successes[k]) / static_cast<double>(counts[k]) : 0.0;
        total += successes[k];
        report.per_outcome.push_back(rec);
    }
    const double p = static_cast<double>(total) / static_cast<double>(mode.trials);
    report.total_success = p;
    report.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(mode.trials));
    report.fidelity_on_success = min_fidelity;
    return report;
}

}  // namespace

TeleportReport run_protocol(const InputState& input, const ChannelSpec& channel,
                            const RunMode& mode) {
    if (const auto* s = std::get_if<Sampled>(&mode)) {
        return run_sampled(input, channel, *s);
    }
    return run_exhaustive(input, channel);
}

}  // namespace telexp
