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
#include <array>
#include <cmath>
#include <numeric>

#include "telexp/errors.hpp"
#include "telexp/operators.hpp"
#include "telexp/rng.hpp"
#include "test_util.hpp"

using namespace telexp;
using testutil::expect_amp_near;

namespace {

Operator random_operator(Rng& rng, std::size_t dim) {
    std::vector<Amplitude> e(dim * dim);
    for (auto& x : e) {
        x = {standard_normal(rng), standard_normal(rng)};
    }
    return {dim, std::move(e)};
}

// Leibniz expansion over all permutations; independent of the LU path.
Amplitude leibniz_det(const Operator& m) {
    std::vector<std::size_t> perm(m.dim());
    std::iota(perm.begin(), perm.end(), 0);
    Amplitude total = 0.0;
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < perm.size(); ++a) {
            for (std::size_t b = a + 1; b < perm.size(); ++b) {
                inversions += perm[a] > perm[b];
            }
        }
        Amplitude term = (inversions % 2) ? -1.0 : 1.0;
        for (std::size_t r = 0; r < perm.size(); ++r) {
            term *= m(r, perm[r]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

const std::array<PauliKind, 4> kAllPaulis{PauliKind::I, PauliKind::Z, PauliKind::X,
                                           PauliKind::YReal};

}  // namespace

TEST(Pauli, MatricesAsTabulated) {
    EXPECT_EQ(max_abs_diff(pauli(PauliKind::I), Operator(2, {1.0, 0.0, 0.0, 1.0})), 0.0);
    EXPECT_EQ(max_abs_diff(pauli(PauliKind::Z), Operator(2, {1.0, 0.0, 0.0, -1.0})), 0.0);
    EXPECT_EQ(max_abs_diff(pauli(PauliKind::X), Operator(2, {0.0, 1.0, 1.0, 0.0})), 0.0);
    EXPECT_EQ(max_abs_diff(pauli(PauliKind::YReal), Operator(2, {0.0, -1.0, 1.0, 0.0})), 0.0);
}

TEST(Pauli, BellIndexMapping) {
    EXPECT_EQ(pauli_for_bell_index(1), PauliKind::I);
    EXPECT_EQ(pauli_for_bell_index(2), PauliKind::Z);
    EXPECT_EQ(pauli_for_bell_index(3), PauliKind::X);
    EXPECT_EQ(pauli_for_bell_index(4), PauliKind::YReal);
    EXPECT_THROW(pauli_for_bell_index(0), IndexError);
}

TEST(Pauli, UnitaryWithUnitDeterminant) {
    for (auto k : kAllPaulis) {
        EXPECT_EQ(classify(pauli(k)), OperatorClass::Unitary);
        EXPECT_NEAR(std::abs(determinant(pauli(k))), 1.0, 1e-15);
    }
}

TEST(Pauli, EveryPairIsUnitary) {
    for (auto a : kAllPaulis) {
        for (auto b : kAllPaulis) {
            EXPECT_EQ(classify(kron(pauli(a), pauli(b))), OperatorClass::Unitary);
        }
    }
}

TEST(BellState, Amplitudes) {
    const double h = 1.0 / std::sqrt(2.0);
    const auto b1 = bell_state(1);
    const auto b4 = bell_state(4);
    const std::array<double, 4> e1{h, 0, 0, h}, e4{0, h, -h, 0};
    for (std::size_t k = 0; k < 4; ++k) {
        expect_amp_near(b1[k], e1[k], 1e-16);
        expect_amp_near(b4[k], e4[k], 1e-16);
    }
    EXPECT_THROW(bell_state(0), IndexError);
    EXPECT_THROW(bell_state(5), IndexError);
}

TEST(BellState, OrthonormalAndComplete) {
    Operator sum = Operator::zero(4);
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            expect_amp_near(inner(bell_state(i), bell_state(j)), i == j ? 1.0 : 0.0, 1e-12);
        }
        const auto b = bell_state(i);
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                sum(r, c) += b[r] * std::conj(b[c]);
            }
        }
    }
    EXPECT_LE(max_abs_diff(sum, Operator::identity(4)), 1e-12);
}

TEST(Cnot, LayoutInvolutionUnitary) {
    const Operator expected(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    EXPECT_EQ(max_abs_diff(cnot(), expected), 0.0);
    EXPECT_EQ(max_abs_diff(cnot() * cnot(), Operator::identity(4)), 0.0);
    EXPECT_EQ(classify(cnot()), OperatorClass::Unitary);
}

TEST(Kron, Examples) {
    const auto flipped = multiply(kron(pauli(PauliKind::I), pauli(PauliKind::X)),
                                  basis_state(2, "00").amps());
    EXPECT_EQ(flipped[1], Amplitude(1.0));
    EXPECT_EQ(max_abs_diff(kron(pauli(PauliKind::Z), pauli(PauliKind::I)),
                           Operator::diagonal({1.0, 1.0, -1.0, -1.0})),
              0.0);
}

TEST(Kron, MixedProductProperty) {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_operator(rng, 2), b = random_operator(rng, 2);
        const auto c = random_operator(rng, 2), d = random_operator(rng, 2);
        EXPECT_LE(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)), 1e-12);
    }
}

TEST(Kron, SizeLimit) {
    EXPECT_THROW(kron(Operator::identity(256), pauli(PauliKind::I)), SizeError);
    EXPECT_THROW(Operator(3, std::vector<Amplitude>(9)), ShapeError);
}

TEST(Determinant, Examples) {
    expect_amp_near(determinant(Operator::identity(4)), 1.0, 1e-15);
    const double al = 0.6, be = 0.4, ga = 0.5, de = std::sqrt(0.23);
    const auto sigma11 = Operator::diagonal({2 * al, 2 * be, 2 * ga, 2 * de});
    EXPECT_NEAR(determinant(sigma11).real(), 16 * al * be * ga * de,
                1e-12 * 16 * al * be * ga * de);
    // Equal channel: sigma(1,3) swaps |00>,|01> and |10>,|11>; two transpositions.
    const Operator sigma13(4, {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0});
    expect_amp_near(leibniz_det(sigma13), 1.0, 0.0);
    expect_amp_near(determinant(sigma13), 1.0, 1e-15);
}

TEST(Determinant, MatchesLeibnizAndIsMultiplicative) {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = random_operator(rng, 4), b = random_operator(rng, 4);
        const Amplitude da = determinant(a), db = determinant(b);
        EXPECT_LE(std::abs(da - leibniz_det(a)), 1e-12 * std::max(1.0, std::abs(da)));
        EXPECT_LE(std::abs(determinant(a * b) - da * db), 1e-9 * std::abs(da * db));
    }
}

TEST(Inverse, Examples) {
    EXPECT_LE(max_abs_diff(inverse(Operator::identity(4)), Operator::identity(4)), 0.0);
    const auto d = Operator::diagonal({1.2, 0.8, 1.0, 0.9});
    EXPECT_LE(max_abs_diff(inverse(d), Operator::diagonal({1 / 1.2, 1 / 0.8, 1.0, 1 / 0.9})),
              1e-15);
    EXPECT_THROW(inverse(Operator::diagonal({1.2, 0.8, 1.0, 0.0})), SingularError);
}

TEST(Inverse, RandomRoundTrip) {
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_operator(rng, 8);
        EXPECT_LE(max_abs_diff(a * inverse(a), Operator::identity(8)), 1e-10);
    }
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(Operator::diagonal({1.0, 1.0, 1.0, 1.0})), OperatorClass::Unitary);
    EXPECT_EQ(classify(Operator::diagonal({1.2, 0.8, 1.0, 2 * std::sqrt(0.23)})),
              OperatorClass::InvertibleNonUnitary);
    EXPECT_EQ(classify(Operator::diagonal({1.2, 0.8, 1.0, 0.0})), OperatorClass::Singular);
}
