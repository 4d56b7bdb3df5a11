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

#include "eqk/noise.h"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "eqk/parallel.h"

namespace eqk {

namespace {

void check_probability(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + " must be in [0, 1], got " + std::to_string(p));
    }
}

void check_noise(const NoiseParams &noise) {
    check_probability(noise.gamma, "gamma");
    check_probability(noise.alpha, "alpha");
}

void check_gate(const Gate &gate, int n_qubits) {
    auto in_range = [&](int q) { return q >= 0 && q < n_qubits; };
    if (!in_range(gate.target)) throw std::out_of_range("gate target out of range");
    if (gate.kind != GateKind::kSingle && (!in_range(gate.control) || gate.control == gate.target)) {
        throw std::invalid_argument("invalid gate control qubit");
    }
}

int touched_qubits(const Gate &gate, std::array<int, 2> &out) {
    out[0] = gate.target;
    if (gate.kind == GateKind::kSingle) return 1;
    out[1] = gate.control;
    return 2;
}

// Heisenberg-picture image of `effect` under one noisy gate: U^dag N^dag(E) U.
void apply_gate_noisy_adjoint(DensityMatrix &effect, const Gate &gate, const KrausPair &damping,
                              const KrausPair &flip) {
    std::array<int, 2> qubits{};
    const int count = touched_qubits(gate, qubits);
    for (int k = count - 1; k >= 0; --k) {
        for (const KrausPair *channel : {&flip, &damping}) {
            DensityMatrix acc = DensityMatrix::from_entries(effect.n_qubits(),
                                                            std::vector<Complex>(effect.entries().size()));
            for (const Mat2 &kr : *channel) {
                DensityMatrix term = effect;
                term.sandwich(qubits[k], dagger(kr), kr);
                for (std::size_t i = 0; i < term.entries().size(); ++i) acc.entries()[i] += term.entries()[i];
            }
            effect = std::move(acc);
        }
    }
    effect.apply_unitary(gate.adjoint());
}

double trace_of_product(const DensityMatrix &a, const DensityMatrix &b) {
    const std::size_t d = a.dim();
    Complex total{};
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) total += a(i, j) * b(j, i);
    }
    return total.real();
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits / 2) {
        throw std::invalid_argument("DensityMatrix: qubit count out of range: " + std::to_string(n_qubits));
    }
    entries_.assign(dim() * dim(), Complex{});
    entries_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_state(const StateVector &psi) {
    DensityMatrix rho(psi.n_qubits());
    const std::size_t d = rho.dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) rho(i, j) = psi[i] * std::conj(psi[j]);
    }
    return rho;
}

DensityMatrix DensityMatrix::from_entries(int n_qubits, std::vector<Complex> entries) {
    DensityMatrix rho(n_qubits);
    if (entries.size() != rho.entries_.size()) throw std::invalid_argument("DensityMatrix: wrong entry count");
    rho.entries_ = std::move(entries);
    return rho;
}

Complex DensityMatrix::trace() const {
    Complex t{};
    for (std::size_t i = 0; i < dim(); ++i) t += (*this)(i, i);
    return t;
}

double DensityMatrix::max_hermitian_deviation() const {
    double dev = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = i; j < dim(); ++j) dev = std::max(dev, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    }
    return dev;
}

double DensityMatrix::min_eigenvalue() const {
    const auto d = static_cast<Eigen::Index>(dim());
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::expectation(const StateVector &psi) const {
    if (psi.n_qubits() != n_qubits_) throw std::invalid_argument("expectation: dimension mismatch");
    Complex total{};
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < dim(); ++j) total += std::conj(psi[i]) * (*this)(i, j) * psi[j];
    }
    return total.real();
}

double DensityMatrix::prob_first_qubit_zero() const {
    double p = 0.0;
    for (std::size_t i = 0; i < dim() / 2; ++i) p += (*this)(i, i).real();
    return p;
}

void DensityMatrix::sandwich(int qubit, const Mat2 &left, const Mat2 &right) {
    if (qubit < 0 || qubit >= n_qubits_) throw std::out_of_range("sandwich: qubit out of range");
    kernels::apply_single(entries_, 2 * n_qubits_, qubit, left);
    kernels::apply_single(entries_, 2 * n_qubits_, n_qubits_ + qubit, transpose(right));
}

void DensityMatrix::apply_unitary(const Gate &gate) {
    check_gate(gate, n_qubits_);
    kernels::apply_gate(entries_, 2 * n_qubits_, gate);
    // Right multiplication by G^dagger acts on column qubits as conj(G).
    Gate col = gate;
    col.target += n_qubits_;
    if (col.control >= 0) col.control += n_qubits_;
    col.matrix = conjugate(gate.matrix);
    kernels::apply_gate(entries_, 2 * n_qubits_, col);
}

KrausPair amplitude_damping_kraus(double gamma) {
    check_probability(gamma, "gamma");
    return {Mat2{Complex{1.0}, Complex{}, Complex{}, Complex{std::sqrt(1.0 - gamma)}},
            Mat2{Complex{}, Complex{std::sqrt(gamma)}, Complex{}, Complex{}}};
}

KrausPair phase_flip_kraus(double alpha) {
    check_probability(alpha, "alpha");
    const double a = std::sqrt(1.0 - alpha);
    const double b = std::sqrt(alpha);
    return {Mat2{Complex{a}, Complex{}, Complex{}, Complex{a}}, Mat2{Complex{b}, Complex{}, Complex{}, Complex{-b}}};
}

NoiseParams tau_noise(double tau) {
    check_probability(tau, "tau");
    return {tau, tau};
}

void apply_channel(DensityMatrix &rho, int qubit, std::span<const Mat2> kraus) {
    if (kraus.empty()) throw std::invalid_argument("apply_channel: no Kraus operators");
    std::vector<Complex> acc(rho.entries().size());
    for (const Mat2 &k : kraus) {
        DensityMatrix term = rho;
        term.sandwich(qubit, k, dagger(k));
        auto e = term.entries();
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += e[i];
    }
    std::copy(acc.begin(), acc.end(), rho.entries().begin());
}

void apply_gate_noisy(DensityMatrix &rho, const Gate &gate, const NoiseParams &noise) {
    check_noise(noise);
    rho.apply_unitary(gate);
    if (noise.gamma == 0.0 && noise.alpha == 0.0) return;
    const KrausPair damping = amplitude_damping_kraus(noise.gamma);
    const KrausPair flip = phase_flip_kraus(noise.alpha);
    std::array<int, 2> qubits{};
    const int count = touched_qubits(gate, qubits);
    for (int k = 0; k < count; ++k) {
        apply_channel(rho, qubits[k], damping);
        apply_channel(rho, qubits[k], flip);
    }
}

DensityMatrix run_noisy(int n_qubits, std::span<const Gate> circuit, const NoiseParams &noise) {
    DensityMatrix rho(n_qubits);
    for (const auto &g : circuit) apply_gate_noisy(rho, g, noise);
    return rho;
}

double noisy_qnn_prob(const QnnParams &params, const Features &x, const NoiseParams &noise) {
    return run_noisy(params.n_qubits(), qnn_circuit(params, x), noise).prob_first_qubit_zero();
}

double noisy_qnn_accuracy(const QnnParams &params, std::span<const DataPoint> data, const NoiseParams &noise) {
    if (data.empty()) throw std::invalid_argument("noisy_qnn_accuracy: empty data");
    std::vector<int> hit(data.size());
    parallel_for(data.size(), [&](std::size_t i) {
        hit[i] = label_from_probability(noisy_qnn_prob(params, data[i].x, noise)) == data[i].y;
    });
    double hits = 0.0;
    for (int h : hit) hits += h;
    return hits / static_cast<double>(data.size());
}

double noisy_kernel_value_directed(const EqkSpec &spec, const QnnParams &params, const Features &xi,
                                   const Features &xj, const NoiseParams &noise) {
    Circuit c = eqk_circuit(spec, params, xj);
    Circuit back = adjoint(eqk_circuit(spec, params, xi));
    c.insert(c.end(), back.begin(), back.end());
    return run_noisy(spec.width(params), c, noise).prob_all_zero();
}

double noisy_kernel_value(const EqkSpec &spec, const QnnParams &params, const Features &xi, const Features &xj,
                          const NoiseParams &noise) {
    return 0.5 * (noisy_kernel_value_directed(spec, params, xi, xj, noise) +
                  noisy_kernel_value_directed(spec, params, xj, xi, noise));
}

NoisyFeatures noisy_features(const EqkSpec &spec, const QnnParams &params, std::span<const Features> points,
                             const NoiseParams &noise) {
    check_noise(noise);
    const int n = spec.width(params);
    const KrausPair damping = amplitude_damping_kraus(noise.gamma);
    const KrausPair flip = phase_flip_kraus(noise.alpha);
    NoisyFeatures out;
    out.states.assign(points.size(), DensityMatrix(n));
    out.effects.assign(points.size(), DensityMatrix(n));
    parallel_for(points.size(), [&](std::size_t i) {
        const Circuit c = eqk_circuit(spec, params, points[i]);
        for (const auto &g : c) apply_gate_noisy(out.states[i], g, noise);
        // The second half of the kernel circuit is adjoint(c); walk it backwards.
        const Circuit back = adjoint(c);
        for (auto it = back.rbegin(); it != back.rend(); ++it) {
            apply_gate_noisy_adjoint(out.effects[i], *it, damping, flip);
        }
    });
    return out;
}

KernelMatrix noisy_gram(const NoisyFeatures &train) {
    const std::size_t m = train.states.size();
    if (m == 0) throw std::invalid_argument("noisy_gram: empty point set");
    KernelMatrix k(m);
    parallel_for(m, [&](std::size_t i) {
        for (std::size_t j = i; j < m; ++j) {
            k(i, j) = 0.5 * (trace_of_product(train.effects[i], train.states[j]) +
                             trace_of_product(train.effects[j], train.states[i]));
        }
    });
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) k(j, i) = k(i, j);
    }
    return k;
}

KernelMatrix noisy_cross(const NoisyFeatures &eval, const NoisyFeatures &train) {
    KernelMatrix k(eval.states.size(), train.states.size());
    parallel_for(eval.states.size(), [&](std::size_t i) {
        for (std::size_t j = 0; j < train.states.size(); ++j) {
            k(i, j) = 0.5 * (trace_of_product(eval.effects[i], train.states[j]) +
                             trace_of_product(train.effects[j], eval.states[i]));
        }
    });
    return k;
}

double relative_improvement(double acc_combined, double acc_qnn) {
    if (acc_qnn == 0.0) throw std::invalid_argument("relative_improvement: QNN accuracy is zero");
    return (acc_combined - acc_qnn) / acc_qnn;
}

}  // namespace eqk
