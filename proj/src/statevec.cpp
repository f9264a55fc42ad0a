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

#include "telexp/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "telexp/errors.hpp"
#include "telexp/kernels.hpp"
#include "telexp/operators.hpp"

namespace telexp {
namespace {

void check_labels_distinct(const std::vector<Label>& labels) {
    std::set<std::string_view> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second) {
            throw LabelError("duplicate qubit label '" + l + "'");
        }
    }
}

void check_same_labels(const StateVector& x, const StateVector& y) {
    if (x.labels() != y.labels()) {
        throw LabelError("state vectors are defined over different labels");
    }
}

std::vector<int> positions_of(const StateVector& state, std::span<const Label> targets) {
    std::vector<int> positions;
    positions.reserve(targets.size());
    for (const auto& t : targets) {
        positions.push_back(state.index_of(t).position);
    }
    std::vector<int> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw LabelError("target labels repeat");
    }
    return positions;
}

}  // namespace

StateVector::StateVector(std::vector<Label> labels, std::vector<Amplitude> amps)
    : labels_(std::move(labels)), amps_(std::move(amps)) {
    if (labels_.empty() || static_cast<int>(labels_.size()) > kMaxQubits) {
        throw SizeError("register must hold 1.." + std::to_string(kMaxQubits) + " qubits, got " +
                        std::to_string(labels_.size()));
    }
    check_labels_distinct(labels_);
    if (amps_.size() != (std::size_t{1} << labels_.size())) {
        throw ShapeError("expected " + std::to_string(std::size_t{1} << labels_.size()) +
                         " amplitudes, got " + std::to_string(amps_.size()));
    }
    for (const auto& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw ValidationError("non-finite amplitude");
        }
    }
}

QubitIndex StateVector::index_of(std::string_view label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw LabelError("unknown qubit label '" + std::string(label) + "'");
    }
    return {*it, static_cast<int>(it - labels_.begin())};
}

bool StateVector::has_label(std::string_view label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += std::norm(a);
    }
    return s;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

bool StateVector::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw NormalizationError("cannot normalize the zero vector");
    }
    return scaled(1.0 / n);
}

StateVector StateVector::scaled(Amplitude factor) const {
    std::vector<Amplitude> out(amps_);
    for (auto& a : out) {
        a *= factor;
    }
    return {labels_, std::move(out)};
}

StateVector StateVector::relabeled(std::vector<Label> labels) const {
    if (labels.size() != labels_.size()) {
        throw LabelError("relabel must keep the qubit count");
    }
    return {std::move(labels), amps_};
}

std::vector<Label> default_labels(int num_qubits) {
    std::vector<Label> labels;
    for (int q = 0; q < num_qubits; ++q) {
        labels.push_back("q" + std::to_string(q));
    }
    return labels;
}

StateVector basis_state(int num_qubits, std::string_view bit_pattern) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw SizeError("register must hold 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    return basis_state(default_labels(num_qubits), bit_pattern);
}

StateVector basis_state(std::vector<Label> labels, std::string_view bit_pattern) {
    if (labels.empty() || static_cast<int>(labels.size()) > kMaxQubits) {
        throw SizeError("register must hold 1.." + std::to_string(kMaxQubits) + " qubits");
    }
    if (bit_pattern.size() != labels.size()) {
        throw SizeError("bit pattern '" + std::string(bit_pattern) + "' does not match " +
                        std::to_string(labels.size()) + " qubits");
    }
    std::size_t index = 0;
    for (char c : bit_pattern) {
        if (c != '0' && c != '1') {
            throw ValidationError("bit pattern may only contain 0 and 1");
        }
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    std::vector<Amplitude> amps(std::size_t{1} << labels.size());
    amps[index] = 1.0;
    return {std::move(labels), std::move(amps)};
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    for (const auto& l : b.labels()) {
        if (a.has_label(l)) {
            throw LabelError("tensor operands share label '" + l + "'");
        }
    }
    if (a.num_qubits() + b.num_qubits() > kMaxQubits) {
        throw SizeError("tensor product exceeds " + std::to_string(kMaxQubits) + " qubits");
    }
    std::vector<Label> labels = a.labels();
    labels.insert(labels.end(), b.labels().begin(), b.labels().end());
    std::vector<Amplitude> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            amps[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return {std::move(labels), std::move(amps)};
}

StateVector apply(const StateVector& state, const Operator& op, std::span<const Label> targets) {
    if (targets.empty() || op.dim() != (std::size_t{1} << targets.size())) {
        throw ShapeError("operator of dimension " + std::to_string(op.dim()) + " cannot act on " +
                         std::to_string(targets.size()) + " target(s)");
    }
    const auto positions = positions_of(state, targets);
    std::vector<Amplitude> out(state.dim());
    kernels::apply_matrix(state.amps(), out, state.num_qubits(), positions, op.entries());
    return {state.labels(), std::move(out)};
}

StateVector apply(const StateVector& state, const Operator& op,
                  std::initializer_list<Label> targets) {
    return apply(state, op, std::span<const Label>(targets.begin(), targets.size()));
}

Projection project(const StateVector& state, const StateVector& pattern,
                   std::span<const Label> targets) {
    if (static_cast<std::size_t>(pattern.num_qubits()) != targets.size()) {
        throw ShapeError("pattern spans " + std::to_string(pattern.num_qubits()) +
                         " qubits but " + std::to_string(targets.size()) + " targets were given");
    }
    if (static_cast<int>(targets.size()) >= state.num_qubits()) {
        throw ShapeError("projection must leave at least one qubit");
    }
    if (!pattern.is_normalized()) {
        throw NormalizationError("projection pattern must be normalized");
    }
    const auto positions = positions_of(state, targets);

    std::vector<Label> rest;
    for (int p = 0; p < state.num_qubits(); ++p) {
        if (std::find(positions.begin(), positions.end(), p) == positions.end()) {
            rest.push_back(state.labels()[static_cast<std::size_t>(p)]);
        }
    }
    std::vector<Amplitude> out(std::size_t{1} << rest.size());
    kernels::project(state.amps(), out, state.num_qubits(), positions, pattern.amps());
    StateVector residual(std::move(rest), std::move(out));
    const double p = residual.norm_squared();
    return {std::move(residual), p};
}

Projection project(const StateVector& state, const StateVector& pattern,
                   std::initializer_list<Label> targets) {
    return project(state, pattern, std::span<const Label>(targets.begin(), targets.size()));
}

Amplitude inner(const StateVector& x, const StateVector& y) {
    check_same_labels(x, y);
    Amplitude s = 0.0;
    for (std::size_t k = 0; k < x.dim(); ++k) {
        s += std::conj(x[k]) * y[k];
    }
    return s;
}

double fidelity(const StateVector& x, const StateVector& y) {
    if (!x.is_normalized() || !y.is_normalized()) {
        throw NormalizationError("fidelity requires normalized states");
    }
    return std::norm(inner(x, y));
}

double max_abs_diff(const StateVector& x, const StateVector& y) {
    check_same_labels(x, y);
    double m = 0.0;
    for (std::size_t k = 0; k < x.dim(); ++k) {
        m = std::max(m, std::abs(x[k] - y[k]));
    }
    return m;
}

}  // namespace telexp
