// Copyright 2026 The eqk Authors
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

#include "eqk/simulator.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace eqk {

namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                    "], got " + std::to_string(n_qubits));
    }
}

void check_index(int qubit, int n_qubits, const char *what) {
    if (qubit < 0 || qubit >= n_qubits) {
        throw std::out_of_range(std::string(what) + " qubit " + std::to_string(qubit) + " out of range for " +
                                std::to_string(n_qubits) + " qubits");
    }
}

inline std::size_t stride_of(int n_qubits, int qubit) { return std::size_t{1} << (n_qubits - 1 - qubit); }

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    check_qubit_count(n_qubits);
    amps_.assign(std::size_t{1} << n_qubits, Complex{});
    amps_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const std::size_t dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
        throw std::invalid_argument("amplitude count must be a power of two >= 2, got " + std::to_string(dim));
    }
    int n = std::countr_zero(dim);
    check_qubit_count(n);
    StateVector s(n, std::move(amplitudes));
    if (std::abs(s.norm_squared() - 1.0) > 1e-10) {
        throw std::invalid_argument("state is not normalized");
    }
    return s;
}

StateVector StateVector::basis(int n_qubits, std::size_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

double StateVector::norm_squared() const {
    double total = 0.0;
    for (const auto &a : amps_) total += std::norm(a);
    return total;
}

Mat2 identity2() { return {Complex{1.0}, Complex{}, Complex{}, Complex{1.0}}; }

Mat2 rz_matrix(double t) {
    return {std::polar(1.0, -t / 2), Complex{}, Complex{}, std::polar(1.0, t / 2)};
}

Mat2 ry_matrix(double t) {
    double c = std::cos(t / 2);
    double s = std::sin(t / 2);
    return {Complex{c}, Complex{-s}, Complex{s}, Complex{c}};
}

Mat2 matmul(const Mat2 &l, const Mat2 &r) {
    return {l[0] * r[0] + l[1] * r[2], l[0] * r[1] + l[1] * r[3], l[2] * r[0] + l[3] * r[2],
            l[2] * r[1] + l[3] * r[3]};
}

Mat2 dagger(const Mat2 &m) { return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}; }

Mat2 conjugate(const Mat2 &m) { return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])}; }

Mat2 transpose(const Mat2 &m) { return {m[0], m[2], m[1], m[3]}; }

Mat2 su2_matrix(const Su2Angles &angles) {
    if (!std::isfinite(angles.a) || !std::isfinite(angles.b) || !std::isfinite(angles.c)) {
        throw std::invalid_argument("su2_matrix: non-finite angle");
    }
    // Rz(c) Ry(b) Rz(a) expanded; at zero angles every factor is exactly 1 or 0.
    double cb = std::cos(angles.b / 2);
    double sb = std::sin(angles.b / 2);
    Complex pa = std::polar(1.0, angles.a / 2);
    Complex pc = std::polar(1.0, angles.c / 2);
    return {std::conj(pc) * cb * std::conj(pa), -std::conj(pc) * sb * pa, pc * sb * std::conj(pa), pc * cb * pa};
}

Gate Gate::single(int target, const Mat2 &m, int tag) { return Gate{GateKind::kSingle, target, -1, m, tag}; }

Gate Gate::controlled(int control, int target, const Mat2 &m, int tag) {
    return Gate{GateKind::kControlled, target, control, m, tag};
}

Gate Gate::cnot(int control, int target) {
    return Gate{GateKind::kCnot, target, control, {Complex{}, Complex{1.0}, Complex{1.0}, Complex{}}, -1};
}

Gate Gate::cz(int control, int target) {
    return Gate{GateKind::kCz, target, control, {Complex{1.0}, Complex{}, Complex{}, Complex{-1.0}}, -1};
}

Gate Gate::adjoint() const {
    Gate g = *this;
    g.matrix = dagger(matrix);
    return g;
}

Circuit adjoint(std::span<const Gate> circuit) {
    Circuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) out.push_back(it->adjoint());
    return out;
}

Circuit entangler_gates(int n_qubits, EntanglerKind kind) {
    if (n_qubits < 2) {
        throw std::invalid_argument("entangler needs at least 2 qubits, got " + std::to_string(n_qubits));
    }
    Circuit out;
    out.reserve(n_qubits - 1);
    for (int s = 0; s + 1 < n_qubits; ++s) {
        out.push_back(kind == EntanglerKind::kCnotCascade ? Gate::cnot(s, s + 1) : Gate::cz(s, s + 1));
    }
    return out;
}

namespace kernels {

void apply_single(std::span<Complex> amps, int n_qubits, int qubit, const Mat2 &u) {
    const std::size_t stride = stride_of(n_qubits, qubit);
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = 0; k < stride; ++k) {
            Complex &a0 = amps[base + k];
            Complex &a1 = amps[base + k + stride];
            Complex v0 = a0;
            Complex v1 = a1;
            a0 = u[0] * v0 + u[1] * v1;
            a1 = u[2] * v0 + u[3] * v1;
        }
    }
}

void apply_controlled(std::span<Complex> amps, int n_qubits, int control, int target, const Mat2 &u) {
    const std::size_t stride = stride_of(n_qubits, target);
    const std::size_t cmask = stride_of(n_qubits, control);
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t k = 0; k < stride; ++k) {
            const std::size_t i0 = base + k;
            if (!(i0 & cmask)) continue;
            Complex &a0 = amps[i0];
            Complex &a1 = amps[i0 + stride];
            Complex v0 = a0;
            Complex v1 = a1;
            a0 = u[0] * v0 + u[1] * v1;
            a1 = u[2] * v0 + u[3] * v1;
        }
    }
}

namespace {

void apply_cnot(std::span<Complex> amps, int n_qubits, int control, int target) {
    const std::size_t stride = stride_of(n_qubits, target);
    const std::size_t cmask = stride_of(n_qubits, control);
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride) {
        for (std::size_t k = 0; k < stride; ++k) {
            const std::size_t i0 = base + k;
            if (i0 & cmask) std::swap(amps[i0], amps[i0 + stride]);
        }
    }
}

void apply_cz(std::span<Complex> amps, int n_qubits, int control, int target) {
    const std::size_t mask = stride_of(n_qubits, target) | stride_of(n_qubits, control);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if ((i & mask) == mask) amps[i] = -amps[i];
    }
}

}  // namespace

void apply_gate(std::span<Complex> amps, int n_qubits, const Gate &gate) {
    switch (gate.kind) {
        case GateKind::kSingle:
            apply_single(amps, n_qubits, gate.target, gate.matrix);
            break;
        case GateKind::kControlled:
            apply_controlled(amps, n_qubits, gate.control, gate.target, gate.matrix);
            break;
        case GateKind::kCnot:
            apply_cnot(amps, n_qubits, gate.control, gate.target);
            break;
        case GateKind::kCz:
            apply_cz(amps, n_qubits, gate.control, gate.target);
            break;
    }
}

Complex matrix_element(std::span<const Complex> lhs, std::span<const Complex> rhs, int n_qubits, int target,
                       int control, const Mat2 &m) {
    const std::size_t stride = stride_of(n_qubits, target);
    const std::size_t cmask = control >= 0 ? stride_of(n_qubits, control) : 0;
    Complex total{};
    for (std::size_t base = 0; base < rhs.size(); base += 2 * stride) {
        for (std::size_t k = 0; k < stride; ++k) {
            const std::size_t i0 = base + k;
            if (cmask && !(i0 & cmask)) continue;
            const std::size_t i1 = i0 + stride;
            total += std::conj(lhs[i0]) * (m[0] * rhs[i0] + m[1] * rhs[i1]) +
                     std::conj(lhs[i1]) * (m[2] * rhs[i0] + m[3] * rhs[i1]);
        }
    }
    return total;
}

}  // namespace kernels

namespace {

void validate_gate(const Gate &gate, int n_qubits) {
    check_index(gate.target, n_qubits, "target");
    if (gate.kind != GateKind::kSingle) {
        check_index(gate.control, n_qubits, "control");
        if (gate.control == gate.target) {
            throw std::invalid_argument("control and target must differ");
        }
    }
}

}  // namespace

void apply_single(StateVector &state, int qubit, const Mat2 &u) {
    check_index(qubit, state.n_qubits(), "target");
    kernels::apply_single(state.amplitudes(), state.n_qubits(), qubit, u);
}

void apply_controlled(StateVector &state, int control, int target, const Mat2 &u) {
    apply_gate(state, Gate::controlled(control, target, u));
}

void apply_entangler(StateVector &state, EntanglerKind kind) {
    run_circuit(state, entangler_gates(state.n_qubits(), kind));
}

void apply_gate(StateVector &state, const Gate &gate) {
    validate_gate(gate, state.n_qubits());
    kernels::apply_gate(state.amplitudes(), state.n_qubits(), gate);
}

void run_circuit(StateVector &state, std::span<const Gate> circuit) {
    for (const auto &g : circuit) apply_gate(state, g);
}

Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    Complex total{};
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) total += std::conj(x[i]) * y[i];
    return total;
}

double prob_first_qubit_zero(const StateVector &state) {
    // Qubit 0 is the most significant bit, so its |0> half is the first half.
    auto amps = state.amplitudes();
    double p = 0.0;
    for (std::size_t i = 0; i < amps.size() / 2; ++i) p += std::norm(amps[i]);
    return p;
}

double prob_all_zero(const StateVector &state) { return std::norm(state[0]); }

}  // namespace eqk
