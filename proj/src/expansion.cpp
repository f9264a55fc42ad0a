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

#include "telexp/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "telexp/errors.hpp"

namespace telexp {
namespace {

void check_bell_index(int k) {
    if (k < 1 || k > 4) {
        throw IndexError("Bell index must be 1..4, got " + std::to_string(k));
    }
}

std::string describe(const std::array<double, 4>& c) {
    return "(" + std::to_string(c[0]) + ", " + std::to_string(c[1]) + ", " +
           std::to_string(c[2]) + ", " + std::to_string(c[3]) + ")";
}

}  // namespace

ChannelSpec::ChannelSpec(double alpha, double beta, double gamma, double delta)
    : coeffs_{alpha, beta, gamma, delta} {
    double s = 0.0;
    for (double c : coeffs_) {
        if (!std::isfinite(c)) {
            throw ValidationError("channel coefficient is not finite");
        }
        if (c < 0.0) {
            throw ValidationError("channel coefficients must be nonnegative reals, got " +
                                  describe(coeffs_));
        }
        s += c * c;
    }
    if (std::abs(s - 1.0) > kAmplitudeTolerance) {
        throw ValidationError("channel coefficients " + describe(coeffs_) +
                              " are not normalized (sum of squares " + std::to_string(s) + ")");
    }
}

ChannelSpec ChannelSpec::maximally_entangled() { return {0.5, 0.5, 0.5, 0.5}; }

double ChannelSpec::min_coefficient() const {
    return *std::min_element(coeffs_.begin(), coeffs_.end());
}

StateVector ChannelSpec::state() const {
    std::vector<Amplitude> amps(16);
    amps[0b0000] = coeffs_[0];
    amps[0b1001] = coeffs_[1];
    amps[0b0110] = coeffs_[2];
    amps[0b1111] = coeffs_[3];
    return {kChannelLabels, std::move(amps)};
}

InputState::InputState(Amplitude a, Amplitude b, Amplitude c, Amplitude d) : amps_{a, b, c, d} {
    double s = 0.0;
    for (const auto& x : amps_) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) {
            throw ValidationError("input amplitude is not finite");
        }
        s += std::norm(x);
    }
    if (std::abs(s - 1.0) > kAmplitudeTolerance) {
        throw ValidationError("input state is not normalized (norm squared " + std::to_string(s) +
                              ")");
    }
}

InputState InputState::basis(int index) {
    if (index < 0 || index > 3) {
        throw IndexError("two-qubit basis index must be 0..3");
    }
    std::array<Amplitude, 4> amps{};
    amps[static_cast<std::size_t>(index)] = 1.0;
    return InputState(amps);
}

StateVector InputState::state(std::vector<Label> labels) const {
    return {std::move(labels), {amps_.begin(), amps_.end()}};
}

ChannelSpec random_channel(Rng& rng, double min_coefficient) {
    for (;;) {
        std::array<double, 4> c{};
        double s = 0.0;
        for (auto& x : c) {
            x = std::abs(standard_normal(rng));
            s += x * x;
        }
        const double n = std::sqrt(s);
        for (auto& x : c) {
            x /= n;
        }
        if (*std::min_element(c.begin(), c.end()) >= min_coefficient) {
            return ChannelSpec(c);
        }
    }
}

InputState random_input(Rng& rng) {
    std::array<Amplitude, 4> amps{};
    double s = 0.0;
    for (auto& a : amps) {
        const double re = standard_normal(rng);
        const double im = standard_normal(rng);
        a = {re, im};
        s += std::norm(a);
    }
    const double n = std::sqrt(s);
    for (auto& a : amps) {
        a /= n;
    }
    return InputState(amps);
}

TransformationOperator sigma_extract(const ChannelSpec& channel, int i, int j) {
    check_bell_index(i);
    check_bell_index(j);
    const StateVector resource = channel.state();
    const StateVector bell_14 = bell_state(i);
    const StateVector bell_23 = bell_state(j);

    Operator m = Operator::zero(4);
    for (std::size_t col = 0; col < 4; ++col) {
        const StateVector joint = tensor(InputState::basis(static_cast<int>(col)).state(), resource);
        const auto after_14 = project(joint, bell_14, {"1", "4"});
        const auto after_23 = project(after_14.residual, bell_23, {"2", "3"});
        for (std::size_t row = 0; row < 4; ++row) {
            m(row, col) = 4.0 * after_23.residual[row];
        }
    }
    return {i, j, std::move(m)};
}

std::vector<TransformationOperator> sigma_table(const ChannelSpec& channel) {
    std::vector<TransformationOperator> table;
    table.reserve(16);
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            table.push_back(sigma_extract(channel, i, j));
        }
    }
    return table;
}

double completeness_check(const InputState& input, const ChannelSpec& channel) {
    double total = 0.0;
    for (const auto& sigma : sigma_table(channel)) {
        for (const auto& amp : multiply(sigma.matrix, input.amplitudes())) {
            total += std::norm(0.25 * amp);
        }
    }
    return total;
}

Factorization factorize(const TransformationOperator& sigma) {
    const PauliKind first = pauli_for_bell_index(sigma.i);
    const PauliKind second = pauli_for_bell_index(sigma.j);
    const Operator pair = kron(pauli(first), pauli(second));
    Operator diag = inverse(pair) * sigma.matrix;

    const double mass = diag.off_diagonal_mass();
    if (mass > kAmplitudeTolerance) {
        throw FactorizationError("sigma(" + std::to_string(sigma.i) + "," +
                                 std::to_string(sigma.j) +
                                 ") is not a Pauli pair times a diagonal (off-diagonal mass " +
                                 std::to_string(mass) + ")");
    }
    const double err = max_abs_diff(pair * diag, sigma.matrix);
    if (err > kAmplitudeTolerance) {
        throw FactorizationError("factorization of sigma(" + std::to_string(sigma.i) + "," +
                                 std::to_string(sigma.j) + ") does not reconstruct it");
    }
    return {first, second, std::move(diag)};
}

std::string_view to_string(Feasibility f) {
    switch (f) {
        case Feasibility::Deterministic: return "deterministic";
        case Feasibility::Probabilistic: return "probabilistic";
        case Feasibility::Impossible: return "impossible";
    }
    return "?";
}

Feasibility invertibility_check(const ChannelSpec& channel) {
    const auto table = sigma_table(channel);
    const OperatorClass verdict = classify(table.front().matrix);
    for (const auto& sigma : table) {
        if (classify(sigma.matrix) != verdict) {
            throw Error("transformation operators of one channel classify differently");
        }
    }
    switch (verdict) {
        case OperatorClass::Unitary: return Feasibility::Deterministic;
        case OperatorClass::InvertibleNonUnitary: return Feasibility::Probabilistic;
        case OperatorClass::Singular: return Feasibility::Impossible;
    }
    return Feasibility::Impossible;
}

namespace {

// One nonzero per row: column and signed coefficient (+-1 alpha .. +-4 delta).
struct TableRow {
    int col;
    int coeff;
};
using TableEntry = std::array<TableRow, 4>;

// clang-format off
constexpr std::array<TableEntry, 16> kTabulated{{
    {{{0, 1}, {1, 2}, {2, 3}, {3, 4}}},     // 11
    {{{0, 1}, {1, -2}, {2, 3}, {3, -4}}},   // 12
    {{{1, 1}, {0, 2}, {3, 4}, {2, 3}}},     // 13
    {{{1, -1}, {0, 2}, {3, 4}, {2, -3}}},   // 14
    {{{0, 1}, {1, 2}, {2, -3}, {3, -4}}},   // 21
    {{{0, 1}, {1, -2}, {2, -3}, {3, 4}}},   // 22
    {{{1, 1}, {0, 2}, {3, -4}, {2, -3}}},   // 23
    {{{1, -1}, {0, 2}, {3, -4}, {2, 3}}},   // 24
    {{{2, 1}, {3, 2}, {0, 3}, {1, 4}}},     // 31
    {{{2, -1}, {3, -2}, {0, 3}, {1, 4}}},   // 32
    {{{3, 1}, {2, 2}, {1, 3}, {0, 4}}},     // 33
    {{{3, -1}, {2, 2}, {1, -3}, {0, 4}}},   // 34
    {{{2, -1}, {3, -2}, {0, 3}, {1, 4}}},   // 41
    {{{2, -1}, {3, 2}, {0, 3}, {1, -4}}},   // 42
    {{{3, -1}, {2, -2}, {1, 3}, {0, 4}}},   // 43
    {{{3, 1}, {2, -2}, {1, -3}, {0, 4}}},   // 44
}};
// clang-format on

}  // namespace

Operator tabulated_sigma(const ChannelSpec& channel, int i, int j) {
    check_bell_index(i);
    check_bell_index(j);
    const auto& entry = kTabulated[static_cast<std::size_t>((i - 1) * 4 + (j - 1))];
    Operator m = Operator::zero(4);
    for (std::size_t row = 0; row < 4; ++row) {
        const int coeff = entry[row].coeff;
        const double value = channel.coefficients()[static_cast<std::size_t>(std::abs(coeff) - 1)];
        m(row, static_cast<std::size_t>(entry[row].col)) = 2.0 * (coeff < 0 ? -value : value);
    }
    return m;
}

}  // namespace telexp
