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

#include "telexp/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "telexp/errors.hpp"

namespace telexp {
namespace {

void check_same_dim(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw ShapeError("operator dimensions differ: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
    }
}

}  // namespace

Operator::Operator(std::size_t dim, std::vector<Amplitude> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0 || !std::has_single_bit(dim_)) {
        throw ShapeError("operator dimension must be a power of two, got " + std::to_string(dim_));
    }
    if (dim_ > kMaxOperatorDim) {
        throw SizeError("operator dimension " + std::to_string(dim_) + " exceeds " +
                        std::to_string(kMaxOperatorDim));
    }
    if (entries_.size() != dim_ * dim_) {
        throw ShapeError("operator of dimension " + std::to_string(dim_) + " needs " +
                         std::to_string(dim_ * dim_) + " entries");
    }
    for (const auto& e : entries_) {
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
            throw ValidationError("non-finite operator entry");
        }
    }
}

Operator Operator::zero(std::size_t dim) { return {dim, std::vector<Amplitude>(dim * dim)}; }

Operator Operator::identity(std::size_t dim) {
    Operator op = zero(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        op(k, k) = 1.0;
    }
    return op;
}

Operator Operator::diagonal(std::span<const Amplitude> diag) {
    Operator op = zero(diag.size());
    for (std::size_t k = 0; k < diag.size(); ++k) {
        op(k, k) = diag[k];
    }
    return op;
}

Operator Operator::diagonal(std::initializer_list<Amplitude> diag) {
    return diagonal(std::span<const Amplitude>(diag.begin(), diag.size()));
}

int Operator::num_qubits() const { return std::countr_zero(dim_); }

Operator Operator::adjoint() const {
    Operator out = zero(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

Operator Operator::scaled(Amplitude factor) const {
    Operator out = *this;
    for (auto& e : out.entries_) {
        e *= factor;
    }
    return out;
}

std::vector<Amplitude> Operator::diagonal_entries() const {
    std::vector<Amplitude> d(dim_);
    for (std::size_t k = 0; k < dim_; ++k) {
        d[k] = (*this)(k, k);
    }
    return d;
}

double Operator::off_diagonal_mass() const {
    double s = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            if (r != c) {
                s += std::norm((*this)(r, c));
            }
        }
    }
    return std::sqrt(s);
}

Operator operator*(const Operator& a, const Operator& b) {
    check_same_dim(a, b);
    const std::size_t n = a.dim();
    Operator out = Operator::zero(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Amplitude ark = a(r, k);
            if (ark == Amplitude{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

Operator operator+(const Operator& a, const Operator& b) {
    check_same_dim(a, b);
    Operator out = a;
    for (std::size_t k = 0; k < a.entries_.size(); ++k) {
        out.entries_[k] += b.entries_[k];
    }
    return out;
}

Operator operator-(const Operator& a, const Operator& b) { return a + b.scaled(-1.0); }

std::vector<Amplitude> multiply(const Operator& op, std::span<const Amplitude> v) {
    if (v.size() != op.dim()) {
        throw ShapeError("vector length " + std::to_string(v.size()) +
                         " does not match operator dimension " + std::to_string(op.dim()));
    }
    std::vector<Amplitude> out(op.dim());
    for (std::size_t r = 0; r < op.dim(); ++r) {
        for (std::size_t c = 0; c < op.dim(); ++c) {
            out[r] += op(r, c) * v[c];
        }
    }
    return out;
}

double max_abs_diff(const Operator& a, const Operator& b) {
    check_same_dim(a, b);
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return m;
}

PauliKind pauli_for_bell_index(int k) {
    if (k < 1 || k > 4) {
        throw IndexError("Bell index must be 1..4, got " + std::to_string(k));
    }
    return static_cast<PauliKind>(k);
}

std::string_view to_string(PauliKind kind) {
    switch (kind) {
        case PauliKind::I: return "I";
        case PauliKind::Z: return "Z";
        case PauliKind::X: return "X";
        case PauliKind::YReal: return "Y_real";
    }
    return "?";
}

Operator pauli(PauliKind kind) {
    switch (kind) {
        case PauliKind::I: return {2, {1.0, 0.0, 0.0, 1.0}};
        case PauliKind::Z: return {2, {1.0, 0.0, 0.0, -1.0}};
        case PauliKind::X: return {2, {0.0, 1.0, 1.0, 0.0}};
        case PauliKind::YReal: return {2, {0.0, -1.0, 1.0, 0.0}};
    }
    throw IndexError("unknown Pauli kind");
}

StateVector bell_state(int k) { return bell_state(k, default_labels(2)); }

StateVector bell_state(int k, std::vector<Label> labels) {
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<Amplitude> amps;
    switch (k) {
        case 1: amps = {h, 0.0, 0.0, h}; break;
        case 2: amps = {h, 0.0, 0.0, -h}; break;
        case 3: amps = {0.0, h, h, 0.0}; break;
        case 4: amps = {0.0, h, -h, 0.0}; break;
        default: throw IndexError("Bell index must be 1..4, got " + std::to_string(k));
    }
    if (labels.size() != 2) {
        throw LabelError("a Bell state spans exactly two qubits");
    }
    return {std::move(labels), std::move(amps)};
}

Operator cnot() {
    return {4, {1.0, 0.0, 0.0, 0.0,
                0.0, 1.0, 0.0, 0.0,
                0.0, 0.0, 0.0, 1.0,
                0.0, 0.0, 1.0, 0.0}};
}

Operator kron(const Operator& a, const Operator& b) {
    const std::size_t n = a.dim() * b.dim();
    if (n > kMaxOperatorDim) {
        throw SizeError("Kronecker product dimension " + std::to_string(n) + " exceeds " +
                        std::to_string(kMaxOperatorDim));
    }
    Operator out = Operator::zero(n);
    for (std::size_t ar = 0; ar < a.dim(); ++ar) {
        for (std::size_t ac = 0; ac < a.dim(); ++ac) {
            for (std::size_t br = 0; br < b.dim(); ++br) {
                for (std::size_t bc = 0; bc < b.dim(); ++bc) {
                    out(ar * b.dim() + br, ac * b.dim() + bc) = a(ar, ac) * b(br, bc);
                }
            }
        }
    }
    return out;
}

Amplitude determinant(const Operator& op) {
    const std::size_t n = op.dim();
    std::vector<Amplitude> m(op.entries().begin(), op.entries().end());
    Amplitude det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) {
                pivot = r;
            }
        }
        if (m[pivot * n + col] == Amplitude{}) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(m[col * n + c], m[pivot * n + c]);
            }
            det = -det;
        }
        const Amplitude p = m[col * n + col];
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Amplitude f = m[r * n + col] / p;
            if (f == Amplitude{}) {
                continue;
            }
            for (std::size_t c = col; c < n; ++c) {
                m[r * n + c] -= f * m[col * n + c];
            }
        }
    }
    return det;
}

Operator inverse(const Operator& op) {
    if (std::abs(determinant(op)) <= kSingularThreshold) {
        throw SingularError("matrix is singular (|det| <= " + std::to_string(kSingularThreshold) +
                            ")");
    }
    const std::size_t n = op.dim();
    Operator a = op;
    Operator inv = Operator::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(col, c), a(pivot, c));
                std::swap(inv(col, c), inv(pivot, c));
            }
        }
        const Amplitude p = a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) /= p;
            inv(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            const Amplitude f = a(r, col);
            if (f == Amplitude{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

std::string_view to_string(OperatorClass c) {
    switch (c) {
        case OperatorClass::Unitary: return "unitary";
        case OperatorClass::InvertibleNonUnitary: return "invertible_nonunitary";
        case OperatorClass::Singular: return "singular";
    }
    return "?";
}

double unitarity_defect(const Operator& op) {
    return max_abs_diff(op * op.adjoint(), Operator::identity(op.dim()));
}

OperatorClass classify(const Operator& op) {
    if (unitarity_defect(op) <= kUnitaryThreshold) {
        return OperatorClass::Unitary;
    }
    if (std::abs(determinant(op)) <= kSingularThreshold) {
        return OperatorClass::Singular;
    }
    return OperatorClass::InvertibleNonUnitary;
}

}  // namespace telexp
