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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "telexp/errors.hpp"
#include "telexp/protocol.hpp"
#include "test_util.hpp"

using namespace telexp;
using testutil::expect_amp_near;

namespace {

const ChannelSpec kUneven(0.6, 0.4, 0.5, std::sqrt(0.23));
const ChannelSpec kEqual = ChannelSpec::maximally_entangled();

AliceMeasurement measured(const StateVector& joint, OutcomeMessage m) {
    auto r = alice_measure(joint, m);
    return std::get<AliceMeasurement>(std::move(r));
}

}  // namespace

TEST(OutcomeMessageType, RangeAndIndexing) {
    EXPECT_THROW(OutcomeMessage(0, 1), IndexError);
    EXPECT_THROW(OutcomeMessage(1, 5), IndexError);
    for (int k = 0; k < 16; ++k) {
        EXPECT_EQ(OutcomeMessage::from_flat_index(k).flat_index(), k);
    }
    EXPECT_EQ(OutcomeMessage::from_flat_index(8), OutcomeMessage(3, 1));
}

TEST(PrepareJoint, EqualChannelBasisInput) {
    const auto joint = prepare_joint(InputState::basis(0), kEqual);
    EXPECT_EQ(joint.labels(), (std::vector<Label>{"1", "2", "3", "4", "5", "6"}));
    EXPECT_NEAR(joint.norm(), 1.0, 1e-15);
    for (std::size_t k = 0; k < 64; ++k) {
        const bool hit = k == 0b000000 || k == 0b001001 || k == 0b000110 || k == 0b001111;
        expect_amp_near(joint[k], hit ? 0.5 : 0.0, 1e-15);
    }
}

TEST(PrepareJoint, ProductChannelAcceptedButImpossible) {
    const ChannelSpec product(1.0, 0.0, 0.0, 0.0);
    EXPECT_NEAR(prepare_joint(InputState::basis(2), product).norm(), 1.0, 1e-15);
    EXPECT_EQ(invertibility_check(product), Feasibility::Impossible);
}

TEST(AliceMeasure, EqualChannelUniformOutcomes) {
    Rng rng(4);
    for (int n = 0; n < 5; ++n) {
        const auto joint = prepare_joint(random_input(rng), kEqual);
        for (double p : outcome_distribution(joint)) {
            EXPECT_NEAR(p, 1.0 / 16.0, 1e-12);
        }
    }
}

TEST(AliceMeasure, OutcomeOneOneResidual) {
    const double n = std::sqrt(0.01 + 0.04 + 0.09 + 0.16 + 0.25 + 0.01);
    const InputState in(Amplitude(0.1, 0.2) / n, Amplitude(0.3, -0.4) / n, Amplitude(0.5, 0.1) / n,
                        0.0);
    const auto m = measured(prepare_joint(in, kUneven), {1, 1});
    const auto& a = in.amplitudes();
    const auto& c = kUneven.coefficients();
    for (std::size_t l = 0; l < 4; ++l) {
        expect_amp_near(m.residual[l], 0.5 * c[l] * a[l], 1e-12);
    }
    EXPECT_EQ(m.residual.labels(), (std::vector<Label>{"5", "6"}));
    EXPECT_NEAR(m.probability, m.residual.norm_squared(), 1e-15);
}

TEST(AliceMeasure, ProbabilitiesSumToOne) {
    Rng rng(9);
    for (int n = 0; n < 20; ++n) {
        const auto joint = prepare_joint(random_input(rng), random_channel(rng));
        double total = 0.0;
        for (double p : outcome_distribution(joint)) {
            total += p;
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(AliceMeasure, ForcedZeroProbabilityOutcomeIsReported) {
    const auto joint = prepare_joint(InputState::basis(0), ChannelSpec(1.0, 0.0, 0.0, 0.0));
    const auto r = alice_measure(joint, OutcomeMessage(1, 3));
    ASSERT_TRUE(std::holds_alternative<ZeroProbabilityOutcome>(r));
    EXPECT_EQ(std::get<ZeroProbabilityOutcome>(r).message, OutcomeMessage(1, 3));
    EXPECT_TRUE(std::holds_alternative<AliceMeasurement>(alice_measure(joint, OutcomeMessage(1, 1))));
}

TEST(AliceMeasure, SeededDrawIsDeterministicAndFollowsDistribution) {
    Rng rng(10);
    const auto joint = prepare_joint(random_input(rng), kUneven);
    const auto a = alice_measure(joint, SeededDraw{123});
    const auto b = alice_measure(joint, SeededDraw{123});
    EXPECT_EQ(a.message, b.message);
    EXPECT_EQ(max_abs_diff(a.residual, b.residual), 0.0);

    const auto dist = outcome_distribution(joint);
    std::array<int, 16> hist{};
    const int draws = 20000;
    for (int t = 0; t < draws; ++t) {
        ++hist[static_cast<std::size_t>(
            alice_measure(joint, SeededDraw{derive_seed(77, static_cast<std::uint64_t>(t))})
                .message.flat_index())];
    }
    for (std::size_t k = 0; k < 16; ++k) {
        const double p = dist[k];
        const double se = std::sqrt(p * (1 - p) / draws);
        EXPECT_NEAR(hist[k] / static_cast<double>(draws), p, 5 * se + 1e-12) << k;
    }
}

TEST(PlanCorrection, StageOnePairFollowsOutcome) {
    const auto plan = plan_correction({3, 1}, kUneven);
    EXPECT_EQ(plan.first, PauliKind::X);
    EXPECT_EQ(plan.second, PauliKind::I);
    const auto p44 = plan_correction({4, 4}, kUneven);
    EXPECT_EQ(p44.first, PauliKind::YReal);
    EXPECT_EQ(p44.second, PauliKind::YReal);
}

TEST(PlanCorrection, UnevenChannelCoefficients) {
    const auto plan = plan_correction({1, 1}, kUneven);
    EXPECT_NEAR(plan.k, 0.8, 1e-12);
    EXPECT_NEAR(plan.a_coeffs[0], 2.0 / 3.0, 1e-12);
    EXPECT_NEAR(plan.a_coeffs[1], 1.0, 1e-12);
    EXPECT_NEAR(plan.a_coeffs[2], 0.8, 1e-12);
    EXPECT_NEAR(plan.a_coeffs[3], 0.8340576562282991, 1e-12);
}

TEST(PlanCorrection, CoefficientsAreScaledInverseDiagonal) {
    Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const auto channel = random_channel(rng, 0.05);
        for (int k = 0; k < 16; ++k) {
            const auto m = OutcomeMessage::from_flat_index(k);
            const auto plan = plan_correction(m, channel);
            const auto d = factorize(sigma_extract(channel, m.i, m.j)).diag;
            double top = 0.0;
            for (std::size_t l = 0; l < 4; ++l) {
                EXPECT_NEAR(plan.a_coeffs[l], plan.k / d(l, l).real(), 1e-12);
                EXPECT_GT(plan.a_coeffs[l], 0.0);
                EXPECT_LE(plan.a_coeffs[l], 1.0);
                top = std::max(top, plan.a_coeffs[l]);
            }
            EXPECT_DOUBLE_EQ(top, 1.0);
        }
    }
}

TEST(PlanCorrection, EqualChannelIsIdentityDilation) {
    const auto plan = plan_correction({2, 4}, kEqual);
    for (double a : plan.a_coeffs) {
        EXPECT_NEAR(a, 1.0, 1e-12);
    }
}

TEST(PlanCorrection, SingularChannelThrows) {
    EXPECT_THROW(plan_correction({1, 1}, ChannelSpec(0.6, 0.0, 0.8, 0.0)), SingularError);
}

TEST(BobStage1, IdentityForOutcomeOneOne) {
    Rng rng(3);
    const auto s = random_input(rng).state(kReceiverLabels);
    EXPECT_LE(max_abs_diff(bob_stage1(s, plan_correction({1, 1}, kUneven)), s), 0.0);
}

TEST(BobStage1, LeavesDiagonalActionForAllOutcomes) {
    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const auto channel = random_channel(rng, 0.05);
        for (int k = 0; k < 16; ++k) {
            const auto m = OutcomeMessage::from_flat_index(k);
            const auto plan = plan_correction(m, channel);
            const auto sigma = sigma_extract(channel, m.i, m.j).matrix;
            // Effective operator: stage 1 applied to each column of sigma.
            Operator effective = Operator::zero(4);
            for (std::size_t c = 0; c < 4; ++c) {
                const StateVector column(kReceiverLabels,
                                         {sigma(0, c), sigma(1, c), sigma(2, c), sigma(3, c)});
                const auto out = bob_stage1(column, plan);
                EXPECT_NEAR(out.norm(), column.norm(), 1e-12);
                for (std::size_t r = 0; r < 4; ++r) {
                    effective(r, c) = out[r];
                }
            }
            EXPECT_LT(effective.off_diagonal_mass(), 1e-12) << k;
        }
    }
}

TEST(BuildU2, BoundaryPlans) {
    CorrectionPlan ones;
    const auto u_ones = build_u2(ones);
    Operator expected = Operator::identity(8);
    for (std::size_t l = 4; l < 8; ++l) {
        expected(l, l) = -1.0;
    }
    EXPECT_EQ(max_abs_diff(u_ones, expected), 0.0);

    CorrectionPlan zeros;
    zeros.a_coeffs = {0.0, 0.0, 0.0, 0.0};
    Operator swap = Operator::zero(8);
    for (std::size_t l = 0; l < 4; ++l) {
        swap(l, l + 4) = 1.0;
        swap(l + 4, l) = 1.0;
    }
    EXPECT_EQ(max_abs_diff(build_u2(zeros), swap), 0.0);

    CorrectionPlan tiny;
    tiny.a_coeffs = {1e-300, 1e-12, 0.5, 1.0};
    EXPECT_LT(unitarity_defect(build_u2(tiny)), 1e-12);
}

TEST(BuildU2, UnitaryForUnevenPlan) {
    const auto u = build_u2(plan_correction({1, 1}, kUneven));
    EXPECT_LT(unitarity_defect(u), 1e-12);
}

TEST(BuildU2, RejectsOutOfRangeCoefficients) {
    CorrectionPlan bad;
    bad.a_coeffs = {1.0, 1.01, 0.5, 0.5};
    EXPECT_THROW(build_u2(bad), ValidationError);
    bad.a_coeffs = {1.0, -0.1, 0.5, 0.5};
    EXPECT_THROW(build_u2(bad), ValidationError);
}

TEST(BobStage2, IdentityPlanAlwaysSucceeds) {
    Rng rng(5);
    const auto s = random_input(rng).state(kReceiverLabels);
    const auto r = bob_stage2(s, CorrectionPlan{}, 0);
    EXPECT_TRUE(r.success);
    EXPECT_NEAR(r.p_success_given_outcome, 1.0, 1e-12);
    EXPECT_LE(max_abs_diff(r.final_state, s), 1e-12);
    EXPECT_NEAR(bob_stage2(s, CorrectionPlan{}, 1).branch_probability, 0.0, 1e-12);
}

TEST(BobStage2, UnevenChannelSuccessProbabilityAndFidelity) {
    const InputState chi(0.5, 0.5, 0.5, 0.5);
    const auto joint = prepare_joint(chi, kUneven);
    const auto plan = plan_correction({1, 1}, kUneven);
    const auto m = measured(joint, {1, 1});
    const auto corrected = bob_stage1(m.residual.normalized(), plan);

    const auto ok = bob_stage2(corrected, plan, 0);
    EXPECT_NEAR(ok.p_success_given_outcome, 0.64, 1e-12);
    EXPECT_TRUE(ok.success);
    EXPECT_NEAR(fidelity(ok.final_state, chi.state(kReceiverLabels)), 1.0, 1e-9);

    const auto fail = bob_stage2(corrected, plan, 1);
    EXPECT_FALSE(fail.success);
    EXPECT_NEAR(ok.branch_probability + fail.branch_probability, 1.0, 1e-12);
}

TEST(BobStage2, SeededDrawDeterministic) {
    const InputState chi(0.5, 0.5, 0.5, 0.5);
    const auto plan = plan_correction({1, 1}, kUneven);
    const auto corrected = bob_stage1(measured(prepare_joint(chi, kUneven), {1, 1}).residual.normalized(), plan);
    for (std::uint64_t s = 0; s < 10; ++s) {
        EXPECT_EQ(bob_stage2(corrected, plan, SeededDraw{s}).success,
                  bob_stage2(corrected, plan, SeededDraw{s}).success);
    }
    EXPECT_THROW(bob_stage2(corrected.scaled(2.0), plan, 0), NormalizationError);
}

TEST(RunProtocol, EqualChannelIsDeterministic) {
    Rng rng(6);
    const auto report = run_protocol(random_input(rng), kEqual, Exhaustive{});
    EXPECT_EQ(report.feasibility, Feasibility::Deterministic);
    ASSERT_EQ(report.per_outcome.size(), 16u);
    for (const auto& r : report.per_outcome) {
        EXPECT_NEAR(r.probability, 1.0 / 16.0, 1e-12);
        EXPECT_NEAR(r.success_given_outcome, 1.0, 1e-12);
    }
    EXPECT_NEAR(report.total_success, 1.0, 1e-12);
    EXPECT_NEAR(report.fidelity_on_success, 1.0, 1e-9);
}

TEST(RunProtocol, UnevenChannelSuccessIsFourMinSquared) {
    Rng rng(7);
    for (int n = 0; n < 5; ++n) {
        const auto report = run_protocol(random_input(rng), kUneven, Exhaustive{});
        EXPECT_NEAR(report.total_success, 0.64, 1e-9);
        EXPECT_NEAR(report.fidelity_on_success, 1.0, 1e-9);
    }
}

TEST(RunProtocol, BruteForceOracleConfirmsClosedForm) {
    Rng rng(8);
    for (int n = 0; n < 30; ++n) {
        const auto channel = random_channel(rng, 0.05);
        const auto input = random_input(rng);
        const double m = channel.min_coefficient();
        const double brute = oracle::brute_total_success(channel.coefficients(), input.amplitudes());
        EXPECT_NEAR(brute, 4 * m * m, 1e-12);
        EXPECT_NEAR(run_protocol(input, channel, Exhaustive{}).total_success, brute, 1e-9);
    }
}

TEST(RunProtocol, SingularChannelReportsImpossible) {
    const auto report =
        run_protocol(InputState(0.5, 0.5, 0.5, 0.5), ChannelSpec(0.6, 0.0, 0.8, 0.0), Exhaustive{});
    EXPECT_EQ(report.feasibility, Feasibility::Impossible);
    EXPECT_EQ(report.total_success, 0.0);
    double total = 0.0;
    for (const auto& r : report.per_outcome) {
        total += r.probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(RunProtocol, SampledAgreesWithExhaustive) {
    const InputState chi(0.5, Amplitude(0.0, 0.5), -0.5, 0.5);
    const auto exact = run_protocol(chi, kUneven, Exhaustive{});
    const auto sampled = run_protocol(chi, kUneven, Sampled{42, 20000});
    const double p = exact.total_success;
    EXPECT_NEAR(sampled.total_success, p, 3 * std::sqrt(p * (1 - p) / 20000));
    EXPECT_NEAR(sampled.fidelity_on_success, 1.0, 1e-9);
    std::uint64_t count = 0;
    for (const auto& r : sampled.per_outcome) {
        count += r.count;
    }
    EXPECT_EQ(count, 20000u);

    const auto again = run_protocol(chi, kUneven, Sampled{42, 20000});
    EXPECT_EQ(again.total_success, sampled.total_success);
    EXPECT_THROW(run_protocol(chi, kUneven, Sampled{1, 0}), ValidationError);
}

TEST(RunProtocol, SampledMatchesStepByStepTrials) {
    const InputState chi(0.5, Amplitude(0.0, 0.5), -0.5, 0.5);
    const std::uint64_t seed = 9, trials = 300;
    const StateVector joint = prepare_joint(chi, kUneven);
    std::array<std::uint64_t, 16> counts{}, successes{};
    for (std::uint64_t t = 0; t < trials; ++t) {
        const std::uint64_t s = derive_seed(seed, t);
        const auto m = alice_measure(joint, SeededDraw{derive_seed(s, 0)});
        const auto k = static_cast<std::size_t>(m.message.flat_index());
        ++counts[k];
        const auto plan = plan_correction(m.message, kUneven);
        const auto r = bob_stage2(bob_stage1(m.residual.normalized(), plan), plan, SeededDraw{derive_seed(s, 1)});
        successes[k] += r.success ? 1 : 0;
    }
    const auto report = run_protocol(chi, kUneven, Sampled{seed, trials});
    for (std::size_t k = 0; k < 16; ++k) {
        EXPECT_EQ(report.per_outcome[k].count, counts[k]);
        EXPECT_EQ(report.per_outcome[k].successes, successes[k]);
    }
}
